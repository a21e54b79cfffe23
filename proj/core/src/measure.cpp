#include "ckb/measure.hpp"

#include <algorithm>
#include <cmath>

namespace ckb {

namespace {

// Monic integer characteristic polynomials have integer rational roots, so a
// rational Perron eigenvalue is necessarily an integer.
std::optional<std::vector<Rat>> rational_eigenvector(const ZeroOneMatrix& A, const Rat& lambda) {
  int n = A.n;
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      M[i][j] = Rat(A.at(i, j));
      if (i == j) M[i][j] -= lambda;
    }
  // Row echelon form with column pivot tracking.
  std::vector<int> pivot_col_of_row;
  int row = 0;
  std::vector<bool> is_pivot_col(n, false);
  for (int col = 0; col < n && row < n; ++col) {
    int p = -1;
    for (int r = row; r < n; ++r)
      if (M[r][col] != 0) {
        p = r;
        break;
      }
    if (p == -1) continue;
    std::swap(M[p], M[row]);
    for (int r = 0; r < n; ++r) {
      if (r == row || M[r][col] == 0) continue;
      Rat factor = M[r][col] / M[row][col];
      for (int c = col; c < n; ++c) M[r][c] -= factor * M[row][c];
    }
    pivot_col_of_row.push_back(col);
    is_pivot_col[col] = true;
    ++row;
  }
  if (row != n - 1) return std::nullopt;  // need a one-dimensional kernel
  int free_col = -1;
  for (int c = 0; c < n; ++c)
    if (!is_pivot_col[c]) free_col = c;
  std::vector<Rat> x(n, Rat(0));
  x[free_col] = 1;
  for (int r = int(pivot_col_of_row.size()) - 1; r >= 0; --r) {
    int pc = pivot_col_of_row[r];
    Rat s(0);
    for (int c = pc + 1; c < n; ++c) s += M[r][c] * x[c];
    x[pc] = -s / M[r][pc];
  }
  bool all_pos = true, all_neg = true;
  for (const Rat& v : x) {
    if (v <= 0) all_pos = false;
    if (v >= 0) all_neg = false;
  }
  if (!all_pos && !all_neg) return std::nullopt;
  if (all_neg)
    for (Rat& v : x) v = -v;
  // Certify: positive eigenvector of a primitive matrix belongs to the
  // Perron eigenvalue only.
  for (int i = 0; i < n; ++i) {
    Rat s(0);
    for (int j = 0; j < n; ++j)
      if (A.at(i, j)) s += x[j];
    if (s != lambda * x[i]) return std::nullopt;
  }
  Rat total(0);
  for (const Rat& v : x) total += v;
  for (Rat& v : x) v /= total;
  return x;
}

}  // namespace

PerronData perron_data(const ZeroOneMatrix& A) {
  PrimitivityResult prim = is_primitive(A);
  if (!prim.primitive)
    throw InvalidInputError("matrix is not primitive: " + prim.certificate);

  int n = A.n;
  std::vector<double> v(n, 1.0 / n), w(n);
  double lambda = 0.0;
  for (int iter = 0; iter < 200000; ++iter) {
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        if (A.at(i, j)) s += v[j];
      w[i] = s;
      norm += s;
    }
    lambda = norm;  // 1-norm of Av with sum(v) = 1
    double residual = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      residual = std::max(residual, std::fabs(w[i] - lambda * v[i]));
      scale = std::max(scale, std::fabs(v[i]));
    }
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
    if (residual <= 1e-14 * std::max(1.0, lambda * scale) && iter > 2) break;
  }

  long long rounded = std::llround(lambda);
  if (rounded >= 1 && std::fabs(lambda - double(rounded)) < 1e-6) {
    auto x = rational_eigenvector(A, Rat(rounded));
    if (x) {
      PerronData pd;
      pd.lambda = Scalar(Rat(rounded));
      for (const Rat& xi : *x) pd.x.push_back(Scalar(xi));
      return pd;
    }
  }

  PerronData pd;
  pd.lambda = Scalar::approx(lambda);
  for (int i = 0; i < n; ++i) pd.x.push_back(Scalar::approx(v[i]));
  return pd;
}

MeasureSpec MeasureSpec::invariant() {
  MeasureSpec s;
  s.kind = Kind::Invariant;
  return s;
}

MeasureSpec MeasureSpec::stationary(std::vector<Scalar> pi, std::vector<Scalar> p) {
  MeasureSpec s;
  s.kind = Kind::StationaryMarkov;
  s.pi = std::move(pi);
  s.ps.push_back(std::move(p));
  return s;
}

MeasureSpec MeasureSpec::sequence(std::vector<Scalar> pi, std::vector<std::vector<Scalar>> ps,
                                  TailRule tail, std::vector<Scalar> tail_p) {
  if (ps.empty()) throw InvalidInputError("sequence spec needs at least one transition matrix");
  MeasureSpec s;
  s.kind = Kind::MarkovSequence;
  s.pi = std::move(pi);
  s.ps = std::move(ps);
  s.tail = tail;
  s.tail_p = std::move(tail_p);
  if (s.tail == TailRule::ExplicitStationaryTail && s.tail_p.empty())
    throw InvalidInputError("explicit-stationary-tail spec is missing the tail matrix");
  return s;
}

const std::vector<Scalar>& MeasureSpec::p_at(int i) const {
  if (kind == Kind::Invariant) throw DomainError("invariant spec has no transition matrices");
  if (i < 1) throw DomainError("step index must be >= 1");
  int N = int(ps.size());
  if (i <= N) return ps[i - 1];
  return tail == TailRule::RepeatLast ? ps.back() : tail_p;
}

namespace {
bool rows_equal(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].same(b[i], 1e-12)) return false;
  return true;
}
}  // namespace

int MeasureSpec::stabilization_index() const {
  if (kind != Kind::MarkovSequence) return 1;
  int N = int(ps.size());
  int M = 1;
  for (int i = 1; i <= N; ++i)
    if (!rows_equal(p_at(i), p_at(i + 1))) M = i + 1;
  return M;
}

std::optional<SpecViolation> validate_p_matrix(const EdgeTable& E, const PMatrix& P,
                                               int matrix_index, double tol) {
  int n = E.vertex_count();
  if (int(P.rows.size()) != n)
    return SpecViolation{matrix_index, -1, "shape", "expected " + std::to_string(n) + " rows"};
  for (int v = 0; v < n; ++v)
    if (int(P.rows[v].size()) != E.size())
      return SpecViolation{matrix_index, v, "shape",
                           "expected " + std::to_string(E.size()) + " columns"};
  for (int v = 0; v < n; ++v) {
    for (EdgeId e = 0; e < E.size(); ++e) {
      const Scalar& p = P.rows[v][e];
      bool on_support = (E.source(e) == v);
      if (on_support && !p.is_positive(tol * tol))
        return SpecViolation{matrix_index, v, "(a) support",
                             "p_{" + std::to_string(v + 1) + "," + E.label(e) +
                                 "} must be positive since s(" + E.label(e) + ") = " +
                                 std::to_string(v + 1)};
      if (!on_support && !p.is_zero(tol))
        return SpecViolation{matrix_index, v, "(a) support",
                             "p_{" + std::to_string(v + 1) + "," + E.label(e) +
                                 "} must be zero since s(" + E.label(e) + ") != " +
                                 std::to_string(v + 1)};
    }
    Scalar row_sum;
    for (EdgeId e : E.out_edges(v)) row_sum += P.rows[v][e];
    if (!row_sum.same(Scalar(1), tol))
      return SpecViolation{matrix_index, v, "(b) row sum",
                           "row " + std::to_string(v + 1) + " sums to " + row_sum.str()};
  }
  return std::nullopt;
}

std::vector<Scalar> compress_p_matrix(const EdgeTable& E, const PMatrix& P) {
  std::vector<Scalar> p(E.size());
  for (EdgeId e = 0; e < E.size(); ++e) p[e] = P.rows[E.source(e)][e];
  return p;
}

namespace {

std::optional<SpecViolation> validate_row(const Diagram& D, const std::vector<Scalar>& p,
                                          int matrix_index, double tol) {
  const EdgeTable& E = D.edges;
  if (int(p.size()) != E.size())
    return SpecViolation{matrix_index, -1, "shape", "expected one value per edge"};
  for (EdgeId e = 0; e < E.size(); ++e)
    if (!p[e].is_positive(tol * tol))
      return SpecViolation{matrix_index, E.source(e), "(a) support",
                           "p(" + E.label(e) + ") must be positive"};
  for (Vertex v = 0; v < D.A.n; ++v) {
    Scalar s;
    for (EdgeId e : E.out_edges(v)) s += p[e];
    if (!s.same(Scalar(1), tol))
      return SpecViolation{matrix_index, v, "(b) row sum",
                           "row " + std::to_string(v + 1) + " sums to " + s.str()};
  }
  return std::nullopt;
}

}  // namespace

std::optional<SpecViolation> validate_spec(const Diagram& D, const MeasureSpec& spec, double tol) {
  if (spec.kind == MeasureSpec::Kind::Invariant) return std::nullopt;
  if (int(spec.pi.size()) != D.A.n)
    return SpecViolation{0, -1, "shape", "pi must have one entry per vertex"};
  Scalar total;
  for (Vertex v = 0; v < D.A.n; ++v) {
    if (!spec.pi[v].is_positive(tol * tol))
      return SpecViolation{0, v, "pi positivity", "pi_" + std::to_string(v + 1) + " must be positive"};
    total += spec.pi[v];
  }
  if (!total.same(Scalar(1), tol))
    return SpecViolation{0, -1, "pi normalization", "pi sums to " + total.str()};
  for (size_t m = 0; m < spec.ps.size(); ++m)
    if (auto v = validate_row(D, spec.ps[m], int(m) + 1, tol)) return v;
  if (spec.kind == MeasureSpec::Kind::MarkovSequence &&
      spec.tail == TailRule::ExplicitStationaryTail)
    if (auto v = validate_row(D, spec.tail_p, int(spec.ps.size()) + 1, tol)) return v;
  return std::nullopt;
}

MeasureSpec resolve_spec(const Diagram& D, MeasureSpec spec) {
  if (spec.kind == MeasureSpec::Kind::Invariant && !spec.perron)
    spec.perron = perron_data(D.A);
  if (auto v = validate_spec(D, spec))
    throw InvalidInputError("invalid measure spec: " + v->condition + ": " + v->detail);
  return spec;
}

Scalar cylinder_measure(const Diagram& D, const MeasureSpec& spec, const CylinderWord& w) {
  const EdgeTable& E = D.edges;
  for (size_t i = 0; i + 1 < w.edges.size(); ++i)
    if (E.range(w.edges[i]) != E.source(w.edges[i + 1]))
      throw DomainError("word not linked: " + word_str(E, w));
  if (spec.kind == MeasureSpec::Kind::Invariant) {
    PerronData pd = spec.perron ? *spec.perron : perron_data(D.A);
    if (w.depth() == 0) return pd.x[w.base];
    Scalar m = pd.x[w.range(E)];
    for (int i = 0; i < w.depth(); ++i) m /= pd.lambda;
    return m;
  }
  if (w.depth() == 0) return spec.pi[w.base];
  Scalar m = spec.pi[w.base];
  for (int i = 0; i < w.depth(); ++i) m *= spec.p_at(i + 1)[w.edges[i]];
  return m;
}

Scalar level_consistency(const Diagram& D, const MeasureSpec& spec, int depth) {
  // No validation here: the defect of a corrupted spec is the point.
  MeasureSpec s = spec;
  if (s.kind == MeasureSpec::Kind::Invariant && !s.perron) s.perron = perron_data(D.A);
  Scalar worst;
  for (const CylinderWord& w : path_words(D, depth)) {
    Scalar parent = cylinder_measure(D, s, w);
    Scalar children;
    for (EdgeId f : D.edges.out_edges(w.range(D.edges))) {
      CylinderWord wf = w;
      if (wf.edges.empty()) wf.base = D.edges.source(f);
      wf.edges.push_back(f);
      children += cylinder_measure(D, s, wf);
    }
    Scalar defect = (parent - children).abs();
    if (worst.less_than(defect)) worst = defect;
  }
  return worst;
}

MeasureSpec invariant_as_markov(const Diagram& D, const PerronData& pd) {
  std::vector<Scalar> pi = pd.x;
  std::vector<Scalar> p(D.edge_count());
  for (const Edge& e : D.edges.edges())
    p[e.id] = pd.x[e.range] / (pd.lambda * pd.x[e.source]);
  return MeasureSpec::stationary(std::move(pi), std::move(p));
}

std::vector<Scalar> q_vectors(const Diagram& D, const MeasureSpec& spec, int k) {
  MeasureSpec s = resolve_spec(D, spec);
  if (s.kind == MeasureSpec::Kind::Invariant) s = as_sequence(D, s);
  std::vector<Scalar> q = s.pi;
  for (int step = 1; step <= k; ++step) {
    std::vector<Scalar> next(D.A.n);
    const auto& p = s.p_at(step);
    for (const Edge& e : D.edges.edges()) next[e.range] += q[e.source] * p[e.id];
    q = std::move(next);
  }
  return q;
}

RnReport rn_sigma_e(const Diagram& D, const MeasureSpec& spec, EdgeId e, const CylinderWord& w) {
  const EdgeTable& E = D.edges;
  if (w.base != E.range(e))
    throw DomainError("word " + word_str(E, w) + " is not in D_" + E.label(e) + ": s(w_1) != r(" +
                      E.label(e) + ")");
  MeasureSpec s = resolve_spec(D, spec);
  RnReport rep;
  CylinderWord ew = prepend(E, e, w);
  rep.ratio = cylinder_measure(D, s, ew) / cylinder_measure(D, s, w);
  switch (s.kind) {
    case MeasureSpec::Kind::Invariant:
      rep.constant = true;
      rep.limit = Scalar(1) / s.perron->lambda;
      break;
    case MeasureSpec::Kind::StationaryMarkov:
      rep.constant = true;
      rep.limit = s.pi[E.source(e)] * s.ps[0][e] / s.pi[E.range(e)];
      break;
    case MeasureSpec::Kind::MarkovSequence: {
      rep.constant = false;
      Scalar prod(1);
      for (int i = 1; i <= w.depth(); ++i) {
        prod *= s.p_at(i + 1)[w.edges[i - 1]] / s.p_at(i)[w.edges[i - 1]];
        rep.partial_products.push_back(prod);
      }
      break;
    }
  }
  return rep;
}

MeasureSpec as_sequence(const Diagram& D, const MeasureSpec& spec) {
  switch (spec.kind) {
    case MeasureSpec::Kind::Invariant: {
      PerronData pd = spec.perron ? *spec.perron : perron_data(D.A);
      MeasureSpec st = invariant_as_markov(D, pd);
      return MeasureSpec::sequence(st.pi, st.ps, TailRule::RepeatLast);
    }
    case MeasureSpec::Kind::StationaryMarkov:
      return MeasureSpec::sequence(spec.pi, spec.ps, TailRule::RepeatLast);
    case MeasureSpec::Kind::MarkovSequence:
      return spec;
  }
  throw DomainError("unreachable");
}

QuasiVerdict quasi_stationarity_check(const Diagram& D, const MeasureSpec& spec, int depth) {
  MeasureSpec s = as_sequence(D, resolve_spec(D, spec));
  QuasiVerdict verdict;

  // Stabilization index restricted to the window: matrices at steps 1..depth+1
  // enter depth-`depth` partial products.
  int M = 1;
  for (int i = 1; i <= depth; ++i)
    if (!rows_equal(s.p_at(i), s.p_at(i + 1))) M = i + 1;
  verdict.stabilization_index = M;
  verdict.pass = (M <= depth);

  int best_latest = -1;
  for (const CylinderWord& w : path_words(D, depth)) {
    int latest = 0;
    std::vector<Scalar> ratios;
    ratios.reserve(depth);
    for (int i = 1; i <= depth; ++i) {
      Scalar r = s.p_at(i + 1)[w.edges[i - 1]] / s.p_at(i)[w.edges[i - 1]];
      ratios.push_back(r);
      if (!r.same(Scalar(1), 1e-12)) latest = i;
    }
    if (latest > best_latest) {
      best_latest = latest;
      verdict.witness = w;
      verdict.witness_ratios = ratios;
      verdict.witness_products.clear();
      Scalar prod(1);
      for (const Scalar& r : ratios) {
        prod *= r;
        verdict.witness_products.push_back(prod);
      }
    }
  }
  if (verdict.pass) {
    verdict.witness.reset();
    verdict.witness_ratios.clear();
    verdict.witness_products.clear();
  }
  return verdict;
}

}  // namespace ckb
