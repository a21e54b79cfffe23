#ifndef CKB_ADMISSIBLE_HPP_
#define CKB_ADMISSIBLE_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "ckb/diagram.hpp"
#include "ckb/measure.hpp"

namespace ckb {

/// Edge bijection alpha : E -> E' carrying linked pairs exactly onto linked
/// pairs; equivalently an isomorphism of the coupled graphs.
struct AdmissibleMap {
  std::vector<EdgeId> map;  // map[e] = alpha(e)

  EdgeId operator()(EdgeId e) const { return map[e]; }
  AdmissibleMap inverse() const;
};

struct AdmissibilityCheck {
  bool admissible = false;
  std::optional<std::pair<EdgeId, EdgeId>> witness;  // first violating ordered pair
};

/// Exact check over all |E|^2 ordered pairs, in lexicographic pair order.
/// Throws InvalidInputError when the map is not a bijection of equal-sized
/// edge sets.
AdmissibilityCheck is_admissible(const Diagram& D, const Diagram& Dp,
                                 const std::vector<EdgeId>& alpha);

/// Complete backtracking enumeration (images tried in edge-id order, pruning
/// by in/out-degree and loop invariants of the coupled graphs), returned in
/// lexicographic order of the bijection. Empty when |E| != |E'|.
std::vector<AdmissibleMap> find_admissible(const Diagram& D, const Diagram& Dp,
                                           size_t limit = size_t(-1));

/// Letterwise application of alpha; depth-0 cylinders map through the induced
/// vertex correspondence.
CylinderWord path_map(const Diagram& D, const Diagram& Dp, const AdmissibleMap& alpha,
                      const CylinderWord& w);

/// Vertex correspondence induced by alpha via source classes.
Vertex induced_vertex_map(const Diagram& D, const Diagram& Dp, const AdmissibleMap& alpha,
                          Vertex v);

struct InvariantCompat {
  bool equal = false;        // false means the pulled-back measure is singular
  Scalar lambda, lambda_p;
  Scalar max_defect;         // over all words of depth <= k, when equal
};

/// Compares Perron eigenvalues (1e-10 relative); when they agree, verifies
/// mu'(alpha(w)) = mu(w) on every word of depth <= k.
InvariantCompat invariant_compat(const Diagram& D, const Diagram& Dp, const AdmissibleMap& alpha,
                                 int depth);

struct StationaryCompat {
  bool invariant = false;
  std::optional<EdgeId> witness;
};

/// Exact test of p'_{s(alpha(e)), alpha(e)} = p_{s(e), e} for every edge.
StationaryCompat stationary_compat(const Diagram& D, const Diagram& Dp,
                                   const MeasureSpec& nu, const MeasureSpec& nu_p,
                                   const AdmissibleMap& alpha);

struct MarkovCompat {
  bool equivalent = false;
  int stabilization_index = 0;
  std::optional<CylinderWord> witness;
  std::vector<Scalar> witness_ratios;
  std::vector<Scalar> witness_products;
};

/// Equivalence of m'.alpha and m at finite depth: the per-step ratio
/// matrices must become exactly 1 within the inspected window; otherwise the
/// lexicographically first worst path is reported.
MarkovCompat markov_compat(const Diagram& D, const Diagram& Dp, const MeasureSpec& m,
                           const MeasureSpec& m_p, const AdmissibleMap& alpha, int depth);

}  // namespace ckb

#endif  // CKB_ADMISSIBLE_HPP_
