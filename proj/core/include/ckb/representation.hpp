#ifndef CKB_REPRESENTATION_HPP_
#define CKB_REPRESENTATION_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckb/admissible.hpp"
#include "ckb/diagram.hpp"
#include "ckb/measure.hpp"

namespace ckb {

/// Orthonormal basis of cylinder indicators at one depth: basis vector
/// b_w = chi_w / sqrt(m(w)). Depth 0 is spanned by the vertex cylinders.
struct LevelSpace {
  int depth = 0;
  std::vector<CylinderWord> words;   // lexicographic
  std::vector<Scalar> measures;      // m(w), strictly positive

  int dim() const { return int(words.size()); }
  int index_of(const CylinderWord& w) const;  // -1 if absent
};

/// Sparse matrix between two level spaces.
class LevelOperator {
 public:
  LevelOperator() = default;
  LevelOperator(int rows, int cols) : rows_(rows), cols_(cols) {}

  static LevelOperator identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void set(int r, int c, Scalar v);
  void add(int r, int c, const Scalar& v);
  Scalar at(int r, int c) const;

  LevelOperator multiply(const LevelOperator& rhs) const;  // this * rhs
  LevelOperator adjoint() const;                           // real transpose
  LevelOperator plus(const LevelOperator& o) const;
  LevelOperator minus(const LevelOperator& o) const;

  /// Largest |entry|; exact zero Scalar when the matrix is exactly zero.
  Scalar max_abs() const;
  bool is_exactly_zero() const;
  bool equals(const LevelOperator& o, double tol = 1e-10) const;

  /// Diagonal with entries in {0,1}?
  bool is_zero_one_diagonal() const;

  /// Every row and every column carries at most one nonzero entry, each
  /// equal to 1 (permutation-type partial isometry; operator norm 1).
  bool is_partial_permutation() const;

  const std::map<std::pair<int, int>, Scalar>& entries() const { return entries_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::map<std::pair<int, int>, Scalar> entries_;
};

/// Level spaces of one (diagram, measure) pair for depths 0..max_depth.
class LevelContext {
 public:
  LevelContext(const Diagram& D, const MeasureSpec& spec, int max_depth);

  const Diagram& diagram() const { return D_; }
  const MeasureSpec& spec() const { return spec_; }
  int max_depth() const { return int(spaces_.size()) - 1; }
  const LevelSpace& space(int k) const;

 private:
  Diagram D_;
  MeasureSpec spec_;
  std::vector<LevelSpace> spaces_;
};

/// Builds a single level space; throws when a basis word has measure <= 0.
LevelSpace level_space(const Diagram& D, const MeasureSpec& spec, int k);

/// T_e : H_k -> H_{k+1}, b_w -> b_{e.w} on D_e-words, 0 elsewhere. The
/// Radon-Nikodym weight of the transfer-operator formula cancels the basis
/// normalization exactly, so the matrix has 0-1 entries.
LevelOperator edge_operator(const LevelContext& ctx, EdgeId e, int k);
/// T*_e : H_{k+1} -> H_k, b_w -> b_{drop-first(w)} on R_e-words.
LevelOperator edge_operator_adjoint(const LevelContext& ctx, EdgeId e, int k);

/// T_i = sum of T_e over s(e) = i.
LevelOperator vertex_operator(const LevelContext& ctx, Vertex i, int k);
LevelOperator vertex_operator_adjoint(const LevelContext& ctx, Vertex i, int k);

/// Diagonal indicator projections on H_k.
LevelOperator domain_projection(const LevelContext& ctx, EdgeId e, int k);   // D_e
LevelOperator range_projection(const LevelContext& ctx, EdgeId e, int k);    // R_e

/// Max |entry| of (sum_e T_e T*_e - I) on H_{k+1} and of
/// (T*_e T_e - sum_f adj(e,f) T_f T*_f) on H_k over all edges.
Scalar ck_verify_edge(const LevelContext& ctx, int k);
/// Same relations for the vertex family and the matrix A itself.
Scalar ck_verify_vertex(const LevelContext& ctx, int k);

/// Isometric inclusion H_k -> H_{k+1}: I_k b_w = sum_f sqrt(m(wf)/m(w)) b_wf.
/// Entries carry exact squares when the measure is rational.
LevelOperator inclusion(const LevelContext& ctx, int k);

/// Exact check of I*_k I_k = identity via the squared entries.
bool inclusion_isometry_exact(const LevelContext& ctx, int k, double tol = 1e-10);

/// One entry of T_e I_k - I_{k+1} T_e with both squared ratios kept exact:
/// value = sqrt(ratio_parent) - sqrt(ratio_shifted).
struct ConsistencyEntry {
  CylinderWord word;   // w in H_k with s(w_1) = r(e)
  EdgeId child;        // extension edge f
  Scalar ratio_parent;   // m(wf)/m(w)
  Scalar ratio_shifted;  // m(e.wf)/m(e.w)
  double defect() const;
};

struct ConsistencyReport {
  std::vector<ConsistencyEntry> entries;
  bool exactly_zero = true;
  double max_defect = 0.0;
};

ConsistencyReport operator_consistency(const LevelContext& ctx, EdgeId e, int k);

struct IntertwinerReport {
  bool unitary = false;
  bool commutes = false;
  std::optional<EdgeId> commute_witness;
  bool inclusion_compatible = false;
  std::optional<std::pair<CylinderWord, EdgeId>> inclusion_witness;
  bool predicate = false;            // measure-compatibility predicate verdict
  std::string predicate_name;
  bool verdicts_agree = false;       // inclusion_compatible == predicate
};

/// U : H'_k -> H_k, b'_{w'} -> b_{alpha^{-1}(w')} (a permutation matrix).
LevelOperator intertwiner(const LevelContext& ctx, const LevelContext& ctx_p,
                          const AdmissibleMap& alpha, int k);

/// Runs the three intertwiner checks at depths <= k: U unitary,
/// U T'_{alpha(e)} = T_e U for every edge, and U I'_k = I_k U compared
/// against the measure-compatibility predicate of the two specs.
IntertwinerReport intertwiner_check(const LevelContext& ctx, const LevelContext& ctx_p,
                                    const AdmissibleMap& alpha, int depth);

/// Monic system on the vertex shift: measure m plus cylinder-constant
/// functions f_i supported on R_i. By default the f_i are inherent
/// (f_i^2 = m(sigma C)/m(C)); a second measure may supply the function data
/// instead, giving a system whose functions disagree with its measure.
struct MonicSystem {
  MeasureSpec measure;
  std::optional<MeasureSpec> f_source;
};

MonicSystem monic_from_measure(const Diagram& D, const MeasureSpec& spec);

/// f_i(C)^2 on a vertex-word cylinder C (depth >= 1, first vertex i);
/// zero off R_i.
Scalar monic_f_sq(const Diagram& D, const MonicSystem& ms, Vertex i,
                  const std::vector<Vertex>& vertex_word);
/// g_i = f_i / |f_i|^2; returns g_i(C)^2.
Scalar monic_g_sq(const Diagram& D, const MonicSystem& ms, Vertex i,
                  const std::vector<Vertex>& vertex_word);

struct MonicVerdict {
  bool projections_diagonal_01 = false;  // every T_I T*_I
  bool compositions_match = false;       // matrix products agree with prefix projections
  int span_dim = 0;
  int space_dim = 0;
  bool monic = false;                    // span_dim == space_dim
};

/// Depth-k cyclicity of the constant vector: the span of
/// { T_I T*_I 1 : cylinder depth of I <= k } inside H_k, where I runs over
/// vertex words. Projections at depth k are prefix projections; words of
/// depth <= k-1 are also verified against the composed operator matrices.
MonicVerdict monic_operators_check(const Diagram& D, const MonicSystem& ms, int k);

struct MonicEquivalence {
  enum class Verdict { Equivalent, NotEquivalent, Singular } verdict;
  std::string failed_check;                       // "support" | "h-consistency" | "intertwining"
  std::optional<std::vector<Vertex>> witness;     // vertex word
  int h_stabilization_depth = 0;                  // first depth with stable density ratios
  std::vector<std::pair<std::vector<Vertex>, Scalar>> h_sq;  // |h|^2 on depth-k cylinders
};

/// Candidate h^2 = m'(C)/m(C) on depth-k cylinders; equivalent iff the
/// density ratios have stabilized across refinements and
/// f'_i(C) h(C) = h(sigma C) f_i(C) holds on every depth-k cylinder in R_i.
MonicEquivalence monic_equivalence(const Diagram& D, const MonicSystem& ms,
                                   const MonicSystem& ms_p, int k);

}  // namespace ckb

#endif  // CKB_REPRESENTATION_HPP_
