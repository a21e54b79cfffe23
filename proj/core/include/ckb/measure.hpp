#ifndef CKB_MEASURE_HPP_
#define CKB_MEASURE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ckb/diagram.hpp"
#include "ckb/scalar.hpp"

namespace ckb {

/// Perron-Frobenius data of a primitive 0-1 matrix. Exact rational whenever
/// the dominant eigenvalue is rational (certified by a positive rational
/// eigenvector), floating point otherwise.
struct PerronData {
  Scalar lambda;
  std::vector<Scalar> x;  // strictly positive, sums to 1
  bool exact() const { return lambda.exact(); }
};

/// Power iteration to residual <= 1e-14, then exact rational recovery when
/// possible. Throws InvalidInputError for non-primitive matrices.
PerronData perron_data(const ZeroOneMatrix& A);

enum class TailRule { RepeatLast, ExplicitStationaryTail };

/// Raw |V| x |E| transition matrix as read from input; entry (v, e) must be
/// positive exactly when s(e) = v, and every row must sum to 1.
struct PMatrix {
  std::vector<std::vector<Scalar>> rows;
};

struct SpecViolation {
  int matrix_index;  // 0 = pi, 1.. = P_1..; -1 for size problems
  int row;           // vertex, 0-based
  std::string condition;
  std::string detail;
};

struct MeasureSpec {
  enum class Kind { Invariant, StationaryMarkov, MarkovSequence } kind;

  // Invariant
  std::optional<PerronData> perron;  // computed against a diagram when absent

  // Markov variants. Transition values are stored per edge: p[e] = p_{s(e),e}.
  std::vector<Scalar> pi;               // over V, positive, sums to 1
  std::vector<std::vector<Scalar>> ps;  // one per-edge row per explicit step
  TailRule tail = TailRule::RepeatLast;
  std::vector<Scalar> tail_p;           // per-edge, when tail is explicit

  static MeasureSpec invariant();
  static MeasureSpec stationary(std::vector<Scalar> pi, std::vector<Scalar> p);
  static MeasureSpec sequence(std::vector<Scalar> pi, std::vector<std::vector<Scalar>> ps,
                              TailRule tail, std::vector<Scalar> tail_p = {});

  /// Per-edge transition values at 1-based step i, after tail extension.
  const std::vector<Scalar>& p_at(int i) const;

  /// First step index from which the transition matrices are constant.
  int stabilization_index() const;
};

/// Checks the support pattern and the row sums of a raw transition matrix.
std::optional<SpecViolation> validate_p_matrix(const EdgeTable& E, const PMatrix& P,
                                               int matrix_index, double tol = 1e-10);

/// Compresses a raw matrix to per-edge values (after validation).
std::vector<Scalar> compress_p_matrix(const EdgeTable& E, const PMatrix& P);

/// Full validation of a spec against a diagram: pi positive and normalized,
/// every transition row stochastic with the right support.
std::optional<SpecViolation> validate_spec(const Diagram& D, const MeasureSpec& spec,
                                           double tol = 1e-10);

/// Resolves Invariant specs against the diagram (computes Perron data once).
MeasureSpec resolve_spec(const Diagram& D, MeasureSpec spec);

/// Measure of a cylinder word. Depth 0 at v gives x_v (resp. pi_v); depth k
/// gives x_{r(w_k)} / lambda^k for the invariant measure and
/// pi_{s(w_1)} p^{(1)}(w_1) ... p^{(k)}(w_k) for Markov specs.
Scalar cylinder_measure(const Diagram& D, const MeasureSpec& spec, const CylinderWord& w);

/// Max over depth-k words of |m(w) - sum of children measures|.
Scalar level_consistency(const Diagram& D, const MeasureSpec& spec, int depth);

/// The invariant measure written as a stationary Markov spec:
/// pi_v = x_v, p_e = x_{r(e)} / (lambda x_{s(e)}).
MeasureSpec invariant_as_markov(const Diagram& D, const PerronData& pd);

/// q^(0) = pi; q^(k)(v) = sum over edges into v of q^(k-1)(s(e)) p^(k)(e).
std::vector<Scalar> q_vectors(const Diagram& D, const MeasureSpec& spec, int k);

struct RnReport {
  Scalar ratio;                         // m(e.w) / m(w)
  bool constant;                        // independent of w (invariant / stationary)
  std::optional<Scalar> limit;          // closed-form value when constant
  std::vector<Scalar> partial_products; // diagnostics for sequences
};

/// Radon-Nikodym ratio of the prepend map at e, evaluated on w in D_e.
RnReport rn_sigma_e(const Diagram& D, const MeasureSpec& spec, EdgeId e, const CylinderWord& w);

struct QuasiVerdict {
  bool pass = false;
  int stabilization_index = 0;           // first step with constant matrices
  std::optional<CylinderWord> witness;   // non-stabilized path, when failing
  std::vector<Scalar> witness_ratios;    // consecutive-step ratios along it
  std::vector<Scalar> witness_products;  // partial products along it
};

/// Passes when the matrix sequence has become constant within the inspected
/// depth window, so every depth-k partial product of consecutive-step ratios
/// has reached its limit (ratios are exactly 1 from the stabilization index
/// on). Fails with the lexicographically first worst path otherwise.
QuasiVerdict quasi_stationarity_check(const Diagram& D, const MeasureSpec& spec, int depth);

/// MarkovSequence view of any spec (Invariant via invariant_as_markov).
MeasureSpec as_sequence(const Diagram& D, const MeasureSpec& spec);

}  // namespace ckb

#endif  // CKB_MEASURE_HPP_
