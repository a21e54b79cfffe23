#include "ckb/sfs.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ckb {

std::vector<std::vector<int>> ShiftSpace::words(int len) const {
  std::vector<std::vector<int>> out;
  if (len <= 0) return out;
  std::vector<int> cur;
  std::function<void()> rec = [&]() {
    if (int(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int a = 0; a < letter_count; ++a) {
      if (!cur.empty() && !follow[cur.back()][a]) continue;
      cur.push_back(a);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

bool ShiftSpace::admissible(const std::vector<int>& w) const {
  for (int a : w)
    if (a < 0 || a >= letter_count) return false;
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (!follow[w[i]][w[i + 1]]) return false;
  return true;
}

std::string ShiftSpace::str(const std::vector<int>& w) const {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += names[w[i]];
  }
  return s + ")";
}

ShiftSpace edge_shift(const Diagram& D) {
  ShiftSpace S;
  S.letter_count = D.edge_count();
  S.follow.assign(S.letter_count, std::vector<int>(S.letter_count, 0));
  for (const Edge& e : D.edges.edges())
    for (EdgeId f : D.edges.out_edges(e.range)) S.follow[e.id][f] = 1;
  for (EdgeId e = 0; e < S.letter_count; ++e) S.names.push_back(D.edges.label(e));
  return S;
}

ShiftSpace vertex_shift(const ZeroOneMatrix& A) {
  ShiftSpace S;
  S.letter_count = A.n;
  S.follow = A.entries;
  for (int v = 0; v < A.n; ++v) S.names.push_back(std::to_string(v + 1));
  return S;
}

bool CylinderSet::contains(const std::vector<int>& w) const {
  if (int(w.size()) < prefix_len) return false;
  std::vector<int> prefix(w.begin(), w.begin() + prefix_len);
  return std::binary_search(members.begin(), members.end(), prefix);
}

std::vector<std::vector<int>> CylinderSet::refine(const ShiftSpace& S, int len) const {
  if (len < prefix_len) throw DomainError("cannot refine a cylinder set to a shorter length");
  std::vector<std::vector<int>> out;
  for (const auto& prefix : members) {
    std::vector<int> cur = prefix;
    std::function<void()> rec = [&]() {
      if (int(cur.size()) == len) {
        out.push_back(cur);
        return;
      }
      for (int a = 0; a < S.letter_count; ++a) {
        if (!S.follow[cur.back()][a]) continue;
        cur.push_back(a);
        rec();
        cur.pop_back();
      }
    };
    rec();
  }
  std::sort(out.begin(), out.end());
  return out;
}

CylinderSet letter_cylinders(std::vector<int> letters) {
  std::sort(letters.begin(), letters.end());
  CylinderSet c;
  c.prefix_len = 1;
  for (int a : letters) c.members.push_back({a});
  return c;
}

std::vector<int> SFSDescriptor::apply(int i, const std::vector<int>& w) const {
  if (!domains[i].contains(w))
    throw DomainError("word " + space.str(w) + " is not in the domain of sigma_" + space.names[i]);
  std::vector<int> out;
  out.reserve(w.size() + 1);
  out.push_back(i);
  out.insert(out.end(), w.begin(), w.end());
  if (!space.admissible(out))
    throw DomainError("prepending " + space.names[i] + " to " + space.str(w) +
                      " leaves the shift space");
  return out;
}

std::vector<int> SFSDescriptor::code(const std::vector<int>& w) const {
  if (w.size() < 2) throw DomainError("coding map needs a word of length >= 2");
  return std::vector<int>(w.begin() + 1, w.end());
}

SFSDescriptor edge_sfs(const Diagram& D) {
  SFSDescriptor s;
  s.space = edge_shift(D);
  for (const Edge& e : D.edges.edges()) {
    std::vector<int> dom;
    for (EdgeId f : D.edges.out_edges(e.range)) dom.push_back(f);
    s.domains.push_back(letter_cylinders(dom));
    s.ranges.push_back(letter_cylinders({e.id}));
  }
  return s;
}

SFSDescriptor vertex_sfs(const ZeroOneMatrix& A) {
  SFSDescriptor s;
  s.space = vertex_shift(A);
  for (int i = 0; i < A.n; ++i) {
    std::vector<int> dom;
    for (int j = 0; j < A.n; ++j)
      if (A.at(i, j)) dom.push_back(j);
    s.domains.push_back(letter_cylinders(dom));
    s.ranges.push_back(letter_cylinders({i}));
  }
  return s;
}

bool ck_matrix_equals(const CKMatrix& M, const ZeroOneMatrix& A) {
  return M.entries == A.entries;
}

SaturationReport saturation_check(const SFSDescriptor& s, int depth) {
  SaturationReport rep;
  for (const auto& w : s.space.words(depth)) {
    bool covered = false;
    for (int i = 0; i < s.index_count() && !covered; ++i)
      if (int(w.size()) >= s.domains[i].prefix_len && s.domains[i].contains(w)) covered = true;
    if (!covered) {
      rep.saturated = false;
      rep.uncovered = w;
      return rep;
    }
  }
  return rep;
}

CKMatrix ck_condition(const SFSDescriptor& s) {
  int count = s.index_count();
  int depth = 1;
  for (int i = 0; i < count; ++i)
    depth = std::max({depth, s.domains[i].prefix_len, s.ranges[i].prefix_len});

  SaturationReport sat = saturation_check(s, depth);
  if (!sat.saturated)
    throw CKConditionError("system is not saturated: " + s.space.str(*sat.uncovered) +
                               " is outside every domain",
                           *sat.uncovered);

  // Ranges must partition the space before domains can decompose into them.
  std::vector<std::vector<std::vector<int>>> range_words(count);
  std::set<std::vector<int>> seen;
  for (int j = 0; j < count; ++j) {
    range_words[j] = s.ranges[j].refine(s.space, depth);
    for (const auto& w : range_words[j]) {
      if (!seen.insert(w).second)
        throw CKConditionError("ranges overlap at " + s.space.str(w), w);
    }
  }
  for (const auto& w : s.space.words(depth))
    if (!seen.count(w))
      throw CKConditionError("ranges do not exhaust the space: " + s.space.str(w) + " is uncovered",
                             w);

  CKMatrix M;
  M.entries.assign(count, std::vector<int>(count, 0));
  for (int i = 0; i < count; ++i) {
    std::vector<std::vector<int>> domain = s.domains[i].refine(s.space, depth);
    std::set<std::vector<int>> remaining(domain.begin(), domain.end());
    for (int j = 0; j < count; ++j) {
      bool inside = !range_words[j].empty();
      for (const auto& w : range_words[j])
        if (!remaining.count(w)) {
          inside = false;
          break;
        }
      if (inside) {
        M.entries[i][j] = 1;
        for (const auto& w : range_words[j]) remaining.erase(w);
      }
    }
    if (!remaining.empty())
      throw CKConditionError("domain " + std::to_string(i + 1) +
                                 " is not a union of ranges; leftover word " +
                                 s.space.str(*remaining.begin()),
                             *remaining.begin());
  }
  return M;
}

std::vector<Vertex> edge_to_vertex_word(const EdgeTable& E, const CylinderWord& w) {
  std::vector<Vertex> vw;
  vw.push_back(w.base);
  for (EdgeId e : w.edges) vw.push_back(E.range(e));
  return vw;
}

CylinderWord vertex_to_edge_word(const Diagram& D, const std::vector<Vertex>& vw) {
  if (vw.empty()) throw DomainError("empty vertex word");
  for (Vertex v : vw)
    if (v < 0 || v >= D.A.n) throw DomainError("vertex out of range");
  if (vw.size() == 1) return vertex_cylinder(vw[0]);
  std::vector<EdgeId> edges;
  for (size_t i = 0; i + 1 < vw.size(); ++i) {
    auto e = D.edges.edge_between(vw[i], vw[i + 1]);
    if (!e)
      throw DomainError("vertex word not admissible: a_{" + std::to_string(vw[i] + 1) + "," +
                        std::to_string(vw[i + 1] + 1) + "} = 0");
    edges.push_back(*e);
  }
  return make_word(D.edges, std::move(edges));
}

RefinementReport refinement_check(const Diagram& D, const SFSDescriptor& edge,
                                  const SFSDescriptor& vertex, int depth) {
  RefinementReport rep;
  const EdgeTable& E = D.edges;

  auto fail = [&](const std::string& identity, std::vector<int> witness) {
    rep.ok = false;
    rep.failed_identity = identity;
    rep.witness = std::move(witness);
    return rep;
  };

  auto first_difference = [](const std::vector<std::vector<int>>& a,
                             const std::vector<std::vector<int>>& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i)
      if (a[i] != b[i]) return a[i];
    return a.size() > b.size() ? a[b.size()] : b[a.size()];
  };

  // Depth-k edge words and their vertex translations.
  std::vector<CylinderWord> ewords = path_words(D, depth);
  std::vector<std::vector<int>> vwords;
  for (const CylinderWord& w : ewords) {
    auto vw = edge_to_vertex_word(E, w);
    vwords.push_back(std::vector<int>(vw.begin(), vw.end()));
  }

  // R_i = union over s(e) = i of R~_e.
  for (int i = 0; i < D.A.n; ++i) {
    std::vector<std::vector<int>> lhs, rhs;
    for (size_t k = 0; k < ewords.size(); ++k) {
      if (vertex.ranges[i].contains(vwords[k])) lhs.push_back(vwords[k]);
      bool in_union = false;
      for (EdgeId e : E.out_edges(i))
        if (edge.ranges[e].contains(ewords[k].edges)) in_union = true;
      if (in_union) rhs.push_back(vwords[k]);
    }
    if (lhs != rhs) return fail("ranges", first_difference(lhs, rhs));
  }

  // D_i = union of D~_e over edges e with a_{i, r(e)} = 1; D~_e depends on
  // r(e) only, so this is the union of the follower sets of the rows of A.
  for (int i = 0; i < D.A.n; ++i) {
    std::vector<std::vector<int>> lhs, rhs;
    for (size_t k = 0; k < ewords.size(); ++k) {
      if (vertex.domains[i].contains(vwords[k])) lhs.push_back(vwords[k]);
      bool in_union = false;
      for (const Edge& e : E.edges())
        if (D.A.at(i, e.range) && edge.domains[e.id].contains(ewords[k].edges)) in_union = true;
      if (in_union) rhs.push_back(vwords[k]);
    }
    if (lhs != rhs) return fail("domains", first_difference(lhs, rhs));
  }

  // sigma_i restricted to D~_e equals sigma~_e whenever s(e) = i.
  for (const Edge& e : E.edges()) {
    for (size_t k = 0; k < ewords.size(); ++k) {
      if (!edge.domains[e.id].contains(ewords[k].edges)) continue;
      std::vector<int> via_edge = edge.apply(e.id, ewords[k].edges);
      std::vector<int> via_vertex = vertex.apply(e.source, vwords[k]);
      CylinderWord lifted = make_word(E, via_edge);
      auto translated = edge_to_vertex_word(E, lifted);
      if (std::vector<int>(translated.begin(), translated.end()) != via_vertex)
        return fail("maps", ewords[k].edges);
    }
  }

  // Coding maps agree under translation.
  for (size_t k = 0; k < ewords.size(); ++k) {
    if (ewords[k].depth() < 1) continue;
    CylinderWord dropped = drop_first(E, ewords[k]);
    auto lhs = edge_to_vertex_word(E, dropped);
    std::vector<int> rhs = vertex.code(vwords[k]);
    if (std::vector<int>(lhs.begin(), lhs.end()) != rhs) return fail("coding", ewords[k].edges);
  }

  return rep;
}

}  // namespace ckb
