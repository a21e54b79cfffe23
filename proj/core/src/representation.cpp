#include "ckb/representation.hpp"

#include <algorithm>
#include <cmath>

#include "ckb/sfs.hpp"

namespace ckb {

int LevelSpace::index_of(const CylinderWord& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || !(*it == w)) return -1;
  return int(it - words.begin());
}

LevelOperator LevelOperator::identity(int n) {
  LevelOperator id(n, n);
  for (int i = 0; i < n; ++i) id.set(i, i, Scalar(1));
  return id;
}

void LevelOperator::set(int r, int c, Scalar v) {
  if (v.is_exact_zero()) return;
  entries_[{r, c}] = std::move(v);
}

void LevelOperator::add(int r, int c, const Scalar& v) {
  auto it = entries_.find({r, c});
  if (it == entries_.end()) {
    set(r, c, v);
    return;
  }
  it->second += v;
  if (it->second.is_exact_zero()) entries_.erase(it);
}

Scalar LevelOperator::at(int r, int c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Scalar(0) : it->second;
}

LevelOperator LevelOperator::multiply(const LevelOperator& rhs) const {
  if (cols_ != rhs.rows_) throw DomainError("operator shape mismatch in multiply");
  LevelOperator out(rows_, rhs.cols_);
  // Group lhs entries by column for the sparse product.
  std::vector<std::vector<std::pair<int, Scalar>>> by_col(cols_);
  for (const auto& [rc, v] : entries_) by_col[rc.second].emplace_back(rc.first, v);
  for (const auto& [rc, v] : rhs.entries_) {
    auto [mid, c] = rc;
    for (const auto& [r, lv] : by_col[mid]) out.add(r, c, lv * v);
  }
  return out;
}

LevelOperator LevelOperator::adjoint() const {
  LevelOperator out(cols_, rows_);
  for (const auto& [rc, v] : entries_) out.set(rc.second, rc.first, v);
  return out;
}

LevelOperator LevelOperator::plus(const LevelOperator& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("operator shape mismatch in plus");
  LevelOperator out = *this;
  for (const auto& [rc, v] : o.entries_) out.add(rc.first, rc.second, v);
  return out;
}

LevelOperator LevelOperator::minus(const LevelOperator& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("operator shape mismatch in minus");
  LevelOperator out = *this;
  for (const auto& [rc, v] : o.entries_) out.add(rc.first, rc.second, -v);
  return out;
}

Scalar LevelOperator::max_abs() const {
  Scalar worst;
  for (const auto& [rc, v] : entries_) {
    Scalar a = v.abs();
    if (worst.less_than(a)) worst = a;
  }
  return worst;
}

bool LevelOperator::is_exactly_zero() const {
  for (const auto& [rc, v] : entries_)
    if (!v.is_exact_zero()) return false;
  return true;
}

bool LevelOperator::equals(const LevelOperator& o, double tol) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  return minus(o).max_abs().is_zero(tol);
}

bool LevelOperator::is_zero_one_diagonal() const {
  for (const auto& [rc, v] : entries_) {
    if (rc.first != rc.second) return false;
    if (!v.same(Scalar(1), 1e-12) && !v.is_zero(1e-12)) return false;
  }
  return true;
}

bool LevelOperator::is_partial_permutation() const {
  std::vector<int> row_count(rows_, 0), col_count(cols_, 0);
  for (const auto& [rc, v] : entries_) {
    if (!v.same(Scalar(1), 1e-12)) return false;
    if (++row_count[rc.first] > 1) return false;
    if (++col_count[rc.second] > 1) return false;
  }
  return true;
}

LevelSpace level_space(const Diagram& D, const MeasureSpec& spec, int k) {
  LevelSpace H;
  H.depth = k;
  H.words = path_words(D, k);
  for (const CylinderWord& w : H.words) {
    Scalar m = cylinder_measure(D, spec, w);
    if (!m.is_positive(1e-300))
      throw InvalidInputError("zero-measure basis word " + word_str(D.edges, w));
    H.measures.push_back(m);
  }
  return H;
}

LevelContext::LevelContext(const Diagram& D, const MeasureSpec& spec, int max_depth)
    : D_(D), spec_(resolve_spec(D, spec)) {
  for (int k = 0; k <= max_depth; ++k) spaces_.push_back(level_space(D_, spec_, k));
}

const LevelSpace& LevelContext::space(int k) const {
  if (k < 0 || k > max_depth()) throw DomainError("level depth out of range");
  return spaces_[k];
}

LevelOperator edge_operator(const LevelContext& ctx, EdgeId e, int k) {
  const LevelSpace& src = ctx.space(k);
  const LevelSpace& dst = ctx.space(k + 1);
  const EdgeTable& E = ctx.diagram().edges;
  LevelOperator T(dst.dim(), src.dim());
  for (int c = 0; c < src.dim(); ++c) {
    const CylinderWord& w = src.words[c];
    if (w.base != E.range(e)) continue;  // w outside D_e
    int r = dst.index_of(prepend(E, e, w));
    T.set(r, c, Scalar(1));
  }
  return T;
}

LevelOperator edge_operator_adjoint(const LevelContext& ctx, EdgeId e, int k) {
  return edge_operator(ctx, e, k).adjoint();
}

LevelOperator vertex_operator(const LevelContext& ctx, Vertex i, int k) {
  const LevelSpace& src = ctx.space(k);
  const LevelSpace& dst = ctx.space(k + 1);
  LevelOperator T(dst.dim(), src.dim());
  for (EdgeId e : ctx.diagram().edges.out_edges(i)) {
    LevelOperator Te = edge_operator(ctx, e, k);
    T = T.plus(Te);
  }
  return T;
}

LevelOperator vertex_operator_adjoint(const LevelContext& ctx, Vertex i, int k) {
  return vertex_operator(ctx, i, k).adjoint();
}

LevelOperator domain_projection(const LevelContext& ctx, EdgeId e, int k) {
  const LevelSpace& H = ctx.space(k);
  const EdgeTable& E = ctx.diagram().edges;
  LevelOperator P(H.dim(), H.dim());
  for (int i = 0; i < H.dim(); ++i)
    if (H.words[i].base == E.range(e)) P.set(i, i, Scalar(1));
  return P;
}

LevelOperator range_projection(const LevelContext& ctx, EdgeId e, int k) {
  const LevelSpace& H = ctx.space(k);
  LevelOperator P(H.dim(), H.dim());
  for (int i = 0; i < H.dim(); ++i) {
    const CylinderWord& w = H.words[i];
    if (w.depth() >= 1 && w.edges.front() == e) P.set(i, i, Scalar(1));
  }
  return P;
}

Scalar ck_verify_edge(const LevelContext& ctx, int k) {
  if (k < 1) throw DomainError("ck_verify_edge needs depth >= 1");
  const Diagram& D = ctx.diagram();
  Scalar worst;

  LevelOperator sum(ctx.space(k + 1).dim(), ctx.space(k + 1).dim());
  for (EdgeId e = 0; e < D.edge_count(); ++e) {
    LevelOperator Te = edge_operator(ctx, e, k);
    sum = sum.plus(Te.multiply(Te.adjoint()));
  }
  Scalar r1 = sum.minus(LevelOperator::identity(ctx.space(k + 1).dim())).max_abs();
  if (worst.less_than(r1)) worst = r1;

  for (EdgeId e = 0; e < D.edge_count(); ++e) {
    LevelOperator Te = edge_operator(ctx, e, k);
    LevelOperator lhs = Te.adjoint().multiply(Te);
    LevelOperator rhs(ctx.space(k).dim(), ctx.space(k).dim());
    for (EdgeId f = 0; f < D.edge_count(); ++f) {
      if (D.edges.range(e) != D.edges.source(f)) continue;
      LevelOperator Tf = edge_operator(ctx, f, k - 1);
      rhs = rhs.plus(Tf.multiply(Tf.adjoint()));
    }
    Scalar r2 = lhs.minus(rhs).max_abs();
    if (worst.less_than(r2)) worst = r2;
  }
  return worst;
}

Scalar ck_verify_vertex(const LevelContext& ctx, int k) {
  if (k < 1) throw DomainError("ck_verify_vertex needs depth >= 1");
  const Diagram& D = ctx.diagram();
  Scalar worst;

  LevelOperator sum(ctx.space(k + 1).dim(), ctx.space(k + 1).dim());
  for (Vertex i = 0; i < D.A.n; ++i) {
    LevelOperator Ti = vertex_operator(ctx, i, k);
    sum = sum.plus(Ti.multiply(Ti.adjoint()));
  }
  Scalar r1 = sum.minus(LevelOperator::identity(ctx.space(k + 1).dim())).max_abs();
  if (worst.less_than(r1)) worst = r1;

  for (Vertex i = 0; i < D.A.n; ++i) {
    LevelOperator Ti = vertex_operator(ctx, i, k);
    LevelOperator lhs = Ti.adjoint().multiply(Ti);
    LevelOperator rhs(ctx.space(k).dim(), ctx.space(k).dim());
    for (Vertex j = 0; j < D.A.n; ++j) {
      if (!D.A.at(i, j)) continue;
      LevelOperator Tj = vertex_operator(ctx, j, k - 1);
      rhs = rhs.plus(Tj.multiply(Tj.adjoint()));
    }
    Scalar r2 = lhs.minus(rhs).max_abs();
    if (worst.less_than(r2)) worst = r2;
  }
  return worst;
}

LevelOperator inclusion(const LevelContext& ctx, int k) {
  const LevelSpace& src = ctx.space(k);
  const LevelSpace& dst = ctx.space(k + 1);
  const EdgeTable& E = ctx.diagram().edges;
  LevelOperator I(dst.dim(), src.dim());
  for (int c = 0; c < src.dim(); ++c) {
    const CylinderWord& w = src.words[c];
    for (EdgeId f : E.out_edges(w.range(E))) {
      CylinderWord wf = w;
      if (wf.edges.empty()) wf.base = E.source(f);
      wf.edges.push_back(f);
      int r = dst.index_of(wf);
      I.set(r, c, sqrt_scalar(dst.measures[r] / src.measures[c]));
    }
  }
  return I;
}

bool inclusion_isometry_exact(const LevelContext& ctx, int k, double tol) {
  const LevelSpace& src = ctx.space(k);
  const LevelSpace& dst = ctx.space(k + 1);
  const EdgeTable& E = ctx.diagram().edges;
  for (int c = 0; c < src.dim(); ++c) {
    const CylinderWord& w = src.words[c];
    Scalar total;
    for (EdgeId f : E.out_edges(w.range(E))) {
      CylinderWord wf = w;
      if (wf.edges.empty()) wf.base = E.source(f);
      wf.edges.push_back(f);
      total += dst.measures[dst.index_of(wf)] / src.measures[c];
    }
    if (!total.same(Scalar(1), tol)) return false;
  }
  return true;
}

double ConsistencyEntry::defect() const {
  return std::fabs(std::sqrt(ratio_parent.as_double()) - std::sqrt(ratio_shifted.as_double()));
}

ConsistencyReport operator_consistency(const LevelContext& ctx, EdgeId e, int k) {
  const Diagram& D = ctx.diagram();
  const EdgeTable& E = D.edges;
  ConsistencyReport rep;
  for (const CylinderWord& w : ctx.space(k).words) {
    if (w.base != E.range(e)) continue;
    CylinderWord ew = prepend(E, e, w);
    Scalar mw = cylinder_measure(D, ctx.spec(), w);
    Scalar mew = cylinder_measure(D, ctx.spec(), ew);
    for (EdgeId f : E.out_edges(w.range(E))) {
      CylinderWord wf = w;
      if (wf.edges.empty()) wf.base = E.source(f);
      wf.edges.push_back(f);
      CylinderWord ewf = prepend(E, e, wf);
      ConsistencyEntry entry;
      entry.word = w;
      entry.child = f;
      entry.ratio_parent = cylinder_measure(D, ctx.spec(), wf) / mw;
      entry.ratio_shifted = cylinder_measure(D, ctx.spec(), ewf) / mew;
      if (!entry.ratio_parent.same(entry.ratio_shifted, 1e-14)) rep.exactly_zero = false;
      rep.max_defect = std::max(rep.max_defect, entry.defect());
      rep.entries.push_back(std::move(entry));
    }
  }
  return rep;
}

LevelOperator intertwiner(const LevelContext& ctx, const LevelContext& ctx_p,
                          const AdmissibleMap& alpha, int k) {
  const LevelSpace& src = ctx_p.space(k);
  const LevelSpace& dst = ctx.space(k);
  AdmissibleMap inv = alpha.inverse();
  LevelOperator U(dst.dim(), src.dim());
  for (int c = 0; c < src.dim(); ++c) {
    CylinderWord w = path_map(ctx_p.diagram(), ctx.diagram(), inv, src.words[c]);
    int r = dst.index_of(w);
    if (r < 0) throw DomainError("pulled-back word missing from the target basis");
    U.set(r, c, Scalar(1));
  }
  return U;
}

IntertwinerReport intertwiner_check(const LevelContext& ctx, const LevelContext& ctx_p,
                                    const AdmissibleMap& alpha, int depth) {
  const Diagram& D = ctx.diagram();
  const Diagram& Dp = ctx_p.diagram();
  auto adm = is_admissible(D, Dp, alpha.map);
  if (!adm.admissible)
    throw InvalidInputError("map is not admissible; witness pair (" +
                            D.edges.label(adm.witness->first) + "," +
                            D.edges.label(adm.witness->second) + ")");

  IntertwinerReport rep;

  rep.unitary = true;
  std::vector<LevelOperator> U;
  for (int j = 0; j <= depth; ++j) {
    U.push_back(intertwiner(ctx, ctx_p, alpha, j));
    const LevelOperator& Uj = U.back();
    bool ok = Uj.is_partial_permutation() &&
              Uj.adjoint().multiply(Uj).equals(LevelOperator::identity(Uj.cols())) &&
              Uj.multiply(Uj.adjoint()).equals(LevelOperator::identity(Uj.rows()));
    if (!ok) rep.unitary = false;
  }

  rep.commutes = true;
  for (EdgeId e = 0; e < D.edge_count() && rep.commutes; ++e)
    for (int j = 0; j + 1 <= depth; ++j) {
      LevelOperator lhs = U[j + 1].multiply(edge_operator(ctx_p, alpha(e), j));
      LevelOperator rhs = edge_operator(ctx, e, j).multiply(U[j]);
      if (!lhs.minus(rhs).is_exactly_zero()) {
        rep.commutes = false;
        rep.commute_witness = e;
        break;
      }
    }

  // U I'_j = I_j U reduces to equality of conditional ratios on matched
  // cylinder pairs; compare the squared values exactly.
  rep.inclusion_compatible = true;
  AdmissibleMap inv = alpha.inverse();
  for (int j = 0; j + 1 <= depth && rep.inclusion_compatible; ++j) {
    const LevelSpace& Hp = ctx_p.space(j);
    for (int c = 0; c < Hp.dim() && rep.inclusion_compatible; ++c) {
      const CylinderWord& wp = Hp.words[c];
      CylinderWord w = path_map(Dp, D, inv, wp);
      Scalar mw = cylinder_measure(D, ctx.spec(), w);
      Scalar mwp = cylinder_measure(Dp, ctx_p.spec(), wp);
      for (EdgeId fp : Dp.edges.out_edges(wp.range(Dp.edges))) {
        EdgeId f = inv(fp);
        CylinderWord wpf = wp;
        if (wpf.edges.empty()) wpf.base = Dp.edges.source(fp);
        wpf.edges.push_back(fp);
        CylinderWord wf = w;
        if (wf.edges.empty()) wf.base = D.edges.source(f);
        wf.edges.push_back(f);
        Scalar ratio_p = cylinder_measure(Dp, ctx_p.spec(), wpf) / mwp;
        Scalar ratio = cylinder_measure(D, ctx.spec(), wf) / mw;
        if (!ratio_p.same(ratio, 1e-10)) {
          rep.inclusion_compatible = false;
          rep.inclusion_witness = std::make_pair(w, f);
          break;
        }
      }
    }
  }

  // Independent measure-compatibility predicate for cross-checking.
  const MeasureSpec& m = ctx.spec();
  const MeasureSpec& mp = ctx_p.spec();
  if (m.kind == MeasureSpec::Kind::Invariant && mp.kind == MeasureSpec::Kind::Invariant) {
    rep.predicate_name = "invariant_compat";
    rep.predicate = invariant_compat(D, Dp, alpha, depth).equal;
  } else if (m.kind == MeasureSpec::Kind::StationaryMarkov &&
             mp.kind == MeasureSpec::Kind::StationaryMarkov) {
    rep.predicate_name = "stationary_compat";
    rep.predicate = stationary_compat(D, Dp, m, mp, alpha).invariant;
  } else {
    rep.predicate_name = "markov_compat";
    rep.predicate = markov_compat(D, Dp, m, mp, alpha, depth).equivalent;
  }
  rep.verdicts_agree = (rep.inclusion_compatible == rep.predicate);
  return rep;
}

MonicSystem monic_from_measure(const Diagram& D, const MeasureSpec& spec) {
  MonicSystem ms;
  ms.measure = resolve_spec(D, spec);
  return ms;
}

namespace {

Scalar measure_of_vertex_word(const Diagram& D, const MeasureSpec& spec,
                              const std::vector<Vertex>& vw) {
  return cylinder_measure(D, spec, vertex_to_edge_word(D, vw));
}

}  // namespace

Scalar monic_f_sq(const Diagram& D, const MonicSystem& ms, Vertex i,
                  const std::vector<Vertex>& vw) {
  if (vw.size() < 2) throw DomainError("f_i needs a vertex word of length >= 2");
  if (vw.front() != i) return Scalar(0);  // off R_i
  const MeasureSpec& source = ms.f_source ? *ms.f_source : ms.measure;
  std::vector<Vertex> shifted(vw.begin() + 1, vw.end());
  return measure_of_vertex_word(D, source, shifted) / measure_of_vertex_word(D, source, vw);
}

Scalar monic_g_sq(const Diagram& D, const MonicSystem& ms, Vertex i,
                  const std::vector<Vertex>& vw) {
  if (vw.front() != i) return Scalar(0);
  return Scalar(1) / monic_f_sq(D, ms, i, vw);
}

namespace {

// Rank over the rationals by Gaussian elimination.
int rational_rank(std::vector<std::vector<Rat>> M) {
  if (M.empty()) return 0;
  int rows = int(M.size()), cols = int(M[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (M[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot == -1) continue;
    std::swap(M[pivot], M[rank]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || M[r][col] == 0) continue;
      Rat factor = M[r][col] / M[rank][col];
      for (int c = col; c < cols; ++c) M[r][c] -= factor * M[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Vertex>> vertex_words_of_length(const Diagram& D, int len) {
  auto raw = vertex_shift(D.A).words(len);
  std::vector<std::vector<Vertex>> out;
  for (auto& w : raw) out.push_back(std::vector<Vertex>(w.begin(), w.end()));
  return out;
}

}  // namespace

MonicVerdict monic_operators_check(const Diagram& D, const MonicSystem& ms, int k) {
  if (k < 1) throw DomainError("monic check needs depth >= 1");
  LevelContext ctx(D, ms.measure, k);
  const LevelSpace& H = ctx.space(k);
  MonicVerdict verdict;
  verdict.space_dim = H.dim();

  // Vertex translations of the basis words.
  std::vector<std::vector<Vertex>> basis_vw;
  for (const CylinderWord& w : H.words) basis_vw.push_back(edge_to_vertex_word(D.edges, w));

  auto prefix_projection = [&](const std::vector<Vertex>& I) {
    LevelOperator P(H.dim(), H.dim());
    for (int idx = 0; idx < H.dim(); ++idx) {
      if (basis_vw[idx].size() < I.size()) continue;
      if (std::equal(I.begin(), I.end(), basis_vw[idx].begin())) P.set(idx, idx, Scalar(1));
    }
    return P;
  };

  verdict.projections_diagonal_01 = true;
  verdict.compositions_match = true;

  // Columns of the cyclicity matrix: chi_[I] expanded in the basis b_w has
  // coefficient sqrt(m(w)) at every extension w of I; the weights rescale
  // rows only, so the 0-1 prefix incidence matrix has the same rank.
  std::vector<std::vector<Rat>> incidence(H.dim());
  for (int r = 0; r < H.dim(); ++r) incidence[r] = {};

  for (int len = 1; len <= k + 1; ++len) {
    for (const auto& I : vertex_words_of_length(D, len)) {
      LevelOperator P = prefix_projection(I);
      if (!P.is_zero_one_diagonal()) verdict.projections_diagonal_01 = false;
      for (int r = 0; r < H.dim(); ++r)
        incidence[r].push_back(P.at(r, r).is_exact_zero() ? Rat(0) : Rat(1));

      // Operator words of j+1 letters compose down to H_{k-j-1}; verify the
      // product against the prefix projection where that bottom space exists.
      int j = len - 1;  // cylinder depth of [I]
      if (j <= k - 1) {
        LevelOperator M = vertex_operator(ctx, I[0], k - 1);
        for (int pos = 1; pos < len; ++pos)
          M = M.multiply(vertex_operator(ctx, I[pos], k - 1 - pos));
        LevelOperator composed = M.multiply(M.adjoint());
        if (!composed.minus(P).is_exactly_zero()) verdict.compositions_match = false;
      }
    }
  }

  verdict.span_dim = rational_rank(std::move(incidence));
  verdict.monic = (verdict.span_dim == verdict.space_dim);
  return verdict;
}

MonicEquivalence monic_equivalence(const Diagram& D, const MonicSystem& ms,
                                   const MonicSystem& ms_p, int k) {
  if (k < 1) throw DomainError("monic equivalence needs depth >= 1");
  MonicEquivalence out;
  out.verdict = MonicEquivalence::Verdict::Equivalent;

  const MeasureSpec& m = ms.measure;
  const MeasureSpec& mp = ms_p.measure;

  // Support comparison (zero against positive measure is a singular pair).
  for (int j = 0; j <= k; ++j)
    for (const auto& vw : vertex_words_of_length(D, j + 1)) {
      Scalar a = measure_of_vertex_word(D, m, vw);
      Scalar b = measure_of_vertex_word(D, mp, vw);
      if (a.is_positive(1e-300) != b.is_positive(1e-300)) {
        out.verdict = MonicEquivalence::Verdict::Singular;
        out.failed_check = "support";
        out.witness = vw;
        return out;
      }
    }

  // h^2 = dm'/dm approximated on cylinders; the ratios must have stabilized
  // across refinements inside the window.
  auto density = [&](const std::vector<Vertex>& vw) {
    return measure_of_vertex_word(D, mp, vw) / measure_of_vertex_word(D, m, vw);
  };
  int stabilized_from = 1;
  for (int j = 1; j + 1 <= k; ++j) {
    bool stable = true;
    for (const auto& vw : vertex_words_of_length(D, j + 1)) {
      Scalar parent = density(vw);
      for (Vertex next = 0; next < D.A.n; ++next) {
        if (!D.A.at(vw.back(), next)) continue;
        std::vector<Vertex> child = vw;
        child.push_back(next);
        if (!density(child).same(parent, 1e-12)) {
          stable = false;
          if (out.verdict == MonicEquivalence::Verdict::Equivalent && j + 1 == k) {
            out.verdict = MonicEquivalence::Verdict::NotEquivalent;
            out.failed_check = "h-consistency";
            out.witness = child;
          }
        }
      }
    }
    if (!stable) stabilized_from = j + 1;
  }
  out.h_stabilization_depth = stabilized_from;
  if (out.verdict != MonicEquivalence::Verdict::Equivalent) return out;

  // f'_i(C) h(C) = h(sigma C) f_i(C) on depth-k cylinders, via squares.
  for (const auto& vw : vertex_words_of_length(D, k + 1)) {
    Vertex i = vw.front();
    std::vector<Vertex> shifted(vw.begin() + 1, vw.end());
    Scalar lhs = monic_f_sq(D, ms_p, i, vw) * density(vw);
    Scalar rhs = density(shifted) * monic_f_sq(D, ms, i, vw);
    if (!lhs.same(rhs, 1e-10)) {
      out.verdict = MonicEquivalence::Verdict::NotEquivalent;
      out.failed_check = "intertwining";
      out.witness = vw;
      return out;
    }
  }

  for (const auto& vw : vertex_words_of_length(D, k + 1))
    out.h_sq.emplace_back(vw, density(vw));
  return out;
}

}  // namespace ckb
