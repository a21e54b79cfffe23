#include "ckb/admissible.hpp"

#include <algorithm>
#include <functional>

namespace ckb {

AdmissibleMap AdmissibleMap::inverse() const {
  AdmissibleMap inv;
  inv.map.assign(map.size(), -1);
  for (EdgeId e = 0; e < EdgeId(map.size()); ++e) inv.map[map[e]] = e;
  return inv;
}

AdmissibilityCheck is_admissible(const Diagram& D, const Diagram& Dp,
                                 const std::vector<EdgeId>& alpha) {
  int m = D.edge_count();
  if (m != Dp.edge_count())
    throw InvalidInputError("edge sets have different sizes: " + std::to_string(m) + " vs " +
                            std::to_string(Dp.edge_count()));
  if (int(alpha.size()) != m)
    throw InvalidInputError("map must assign an image to every edge");
  std::vector<int> used(m, 0);
  for (EdgeId e = 0; e < m; ++e) {
    if (alpha[e] < 0 || alpha[e] >= m) throw InvalidInputError("image edge out of range");
    if (used[alpha[e]]++) throw InvalidInputError("map is not a bijection");
  }
  AdmissibilityCheck check;
  for (EdgeId e = 0; e < m; ++e)
    for (EdgeId f = 0; f < m; ++f) {
      bool linked = D.edges.range(e) == D.edges.source(f);
      bool linked_image = Dp.edges.range(alpha[e]) == Dp.edges.source(alpha[f]);
      if (linked != linked_image) {
        check.witness = std::make_pair(e, f);
        return check;
      }
    }
  check.admissible = true;
  return check;
}

namespace {

struct GraphInvariant {
  int indeg, outdeg, loop;
  bool operator==(const GraphInvariant&) const = default;
};

std::vector<GraphInvariant> coupled_invariants(const Diagram& D) {
  std::vector<GraphInvariant> inv(D.edge_count());
  for (const Edge& e : D.edges.edges()) {
    inv[e.id].indeg = int(D.edges.in_edges(e.source).size());
    inv[e.id].outdeg = int(D.edges.out_edges(e.range).size());
    inv[e.id].loop = (e.source == e.range) ? 1 : 0;
  }
  return inv;
}

}  // namespace

std::vector<AdmissibleMap> find_admissible(const Diagram& D, const Diagram& Dp, size_t limit) {
  std::vector<AdmissibleMap> out;
  int m = D.edge_count();
  if (m != Dp.edge_count()) return out;

  auto inv = coupled_invariants(D);
  auto inv_p = coupled_invariants(Dp);
  auto linked = [&](const Diagram& X, EdgeId e, EdgeId f) {
    return X.edges.range(e) == X.edges.source(f);
  };

  std::vector<EdgeId> alpha(m, -1);
  std::vector<char> used(m, 0);
  std::function<void(int)> rec = [&](int e) {
    if (out.size() >= limit) return;
    if (e == m) {
      AdmissibleMap found;
      found.map = alpha;
      out.push_back(std::move(found));
      return;
    }
    for (EdgeId img = 0; img < m; ++img) {
      if (used[img] || !(inv[e] == inv_p[img])) continue;
      bool consistent = true;
      for (EdgeId prev = 0; prev < e && consistent; ++prev) {
        if (linked(D, prev, e) != linked(Dp, alpha[prev], img)) consistent = false;
        if (linked(D, e, prev) != linked(Dp, img, alpha[prev])) consistent = false;
      }
      if (linked(D, e, e) != linked(Dp, img, img)) consistent = false;
      if (!consistent) continue;
      alpha[e] = img;
      used[img] = 1;
      rec(e + 1);
      used[img] = 0;
      alpha[e] = -1;
    }
  };
  rec(0);
  return out;  // DFS in image-id order is already lexicographic
}

Vertex induced_vertex_map(const Diagram& D, const Diagram& Dp, const AdmissibleMap& alpha,
                          Vertex v) {
  const auto& out = D.edges.out_edges(v);
  if (out.empty()) throw DomainError("vertex with no outgoing edge");
  return Dp.edges.source(alpha(out.front()));
}

CylinderWord path_map(const Diagram& D, const Diagram& Dp, const AdmissibleMap& alpha,
                      const CylinderWord& w) {
  if (w.depth() == 0) return vertex_cylinder(induced_vertex_map(D, Dp, alpha, w.base));
  std::vector<EdgeId> image;
  image.reserve(w.edges.size());
  for (EdgeId e : w.edges) image.push_back(alpha(e));
  return make_word(Dp.edges, std::move(image));
}

InvariantCompat invariant_compat(const Diagram& D, const Diagram& Dp, const AdmissibleMap& alpha,
                                 int depth) {
  InvariantCompat res;
  PerronData pd = perron_data(D.A);
  PerronData pd_p = perron_data(Dp.A);
  res.lambda = pd.lambda;
  res.lambda_p = pd_p.lambda;

  double l = pd.lambda.as_double(), lp = pd_p.lambda.as_double();
  bool lambdas_equal = pd.lambda.exact() && pd_p.lambda.exact()
                           ? pd.lambda.rat() == pd_p.lambda.rat()
                           : std::fabs(l - lp) <= 1e-10 * std::max(1.0, std::fabs(l));
  if (!lambdas_equal) return res;  // singular

  MeasureSpec mu = resolve_spec(D, MeasureSpec::invariant());
  MeasureSpec mu_p = resolve_spec(Dp, MeasureSpec::invariant());
  res.equal = true;
  for (int k = 0; k <= depth; ++k)
    for (const CylinderWord& w : path_words(D, k)) {
      Scalar lhs = cylinder_measure(Dp, mu_p, path_map(D, Dp, alpha, w));
      Scalar rhs = cylinder_measure(D, mu, w);
      Scalar defect = (lhs - rhs).abs();
      if (res.max_defect.less_than(defect)) res.max_defect = defect;
      if (!lhs.same(rhs, 1e-10)) res.equal = false;
    }
  return res;
}

StationaryCompat stationary_compat(const Diagram& D, const Diagram& Dp, const MeasureSpec& nu,
                                   const MeasureSpec& nu_p, const AdmissibleMap& alpha) {
  if (nu.kind != MeasureSpec::Kind::StationaryMarkov ||
      nu_p.kind != MeasureSpec::Kind::StationaryMarkov)
    throw InvalidInputError("stationary_compat needs stationary Markov specs");
  StationaryCompat res;
  for (EdgeId e = 0; e < D.edge_count(); ++e)
    if (!nu_p.ps[0][alpha(e)].same(nu.ps[0][e], 1e-12)) {
      res.witness = e;
      return res;
    }
  res.invariant = true;
  return res;
}

MarkovCompat markov_compat(const Diagram& D, const Diagram& Dp, const MeasureSpec& m,
                           const MeasureSpec& m_p, const AdmissibleMap& alpha, int depth) {
  MeasureSpec a = as_sequence(D, resolve_spec(D, m));
  MeasureSpec b = as_sequence(Dp, resolve_spec(Dp, m_p));
  MarkovCompat res;

  // Ratio matrices r_i(e) = p'^(i)(alpha(e)) / p^(i)(e) must become exactly 1
  // within the window (steps 1..depth enter depth-`depth` products).
  auto ratios_one_at = [&](int i) {
    for (EdgeId e = 0; e < D.edge_count(); ++e)
      if (!b.p_at(i)[alpha(e)].same(a.p_at(i)[e], 1e-12)) return false;
    return true;
  };
  int M = 1;
  for (int i = 1; i <= depth; ++i)
    if (!ratios_one_at(i)) M = i + 1;
  res.stabilization_index = M;
  res.equivalent = (M <= depth);

  if (!res.equivalent) {
    int best_latest = -1;
    for (const CylinderWord& w : path_words(D, depth)) {
      int latest = 0;
      std::vector<Scalar> ratios;
      for (int i = 1; i <= depth; ++i) {
        Scalar r = b.p_at(i)[alpha(w.edges[i - 1])] / a.p_at(i)[w.edges[i - 1]];
        ratios.push_back(r);
        if (!r.same(Scalar(1), 1e-12)) latest = i;
      }
      if (latest > best_latest) {
        best_latest = latest;
        res.witness = w;
        res.witness_ratios = ratios;
        res.witness_products.clear();
        Scalar prod(1);
        for (const Scalar& r : ratios) {
          prod *= r;
          res.witness_products.push_back(prod);
        }
      }
    }
  }
  return res;
}

}  // namespace ckb
