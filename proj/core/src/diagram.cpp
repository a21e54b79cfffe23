#include "ckb/diagram.hpp"

#include <algorithm>
#include <functional>

namespace ckb {

ZeroOneMatrix ZeroOneMatrix::from_rows(std::vector<std::vector<int>> rows) {
  ZeroOneMatrix A;
  A.n = int(rows.size());
  if (A.n == 0) throw InvalidInputError("empty matrix");
  for (const auto& row : rows)
    if (int(row.size()) != A.n) throw InvalidInputError("matrix is not square");
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j)
      if (rows[i][j] != 0 && rows[i][j] != 1)
        throw InvalidInputError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") is not 0 or 1");
  A.entries = std::move(rows);
  for (int i = 0; i < A.n; ++i) {
    if (A.row_sum(i) == 0)
      throw InvalidInputError("row " + std::to_string(i + 1) + " is zero (source map not surjective)");
    if (A.col_sum(i) == 0)
      throw InvalidInputError("column " + std::to_string(i + 1) + " is zero (range map not surjective)");
  }
  return A;
}

int ZeroOneMatrix::row_sum(Vertex i) const {
  int s = 0;
  for (int v : entries[i]) s += v;
  return s;
}

int ZeroOneMatrix::col_sum(Vertex j) const {
  int s = 0;
  for (int i = 0; i < n; ++i) s += entries[i][j];
  return s;
}

int ZeroOneMatrix::total() const {
  int s = 0;
  for (int i = 0; i < n; ++i) s += row_sum(i);
  return s;
}

NonNegIntMatrix NonNegIntMatrix::from_rows(std::vector<std::vector<long long>> rows) {
  NonNegIntMatrix F;
  F.n = int(rows.size());
  if (F.n == 0) throw InvalidInputError("empty matrix");
  for (const auto& row : rows)
    if (int(row.size()) != F.n) throw InvalidInputError("matrix is not square");
  for (int i = 0; i < F.n; ++i)
    for (int j = 0; j < F.n; ++j)
      if (rows[i][j] < 0) throw InvalidInputError("negative entry");
  F.entries = std::move(rows);
  for (int i = 0; i < F.n; ++i) {
    long long rs = 0, cs = 0;
    for (int j = 0; j < F.n; ++j) {
      rs += F.entries[i][j];
      cs += F.entries[j][i];
    }
    if (rs == 0) throw InvalidInputError("row " + std::to_string(i + 1) + " is zero");
    if (cs == 0) throw InvalidInputError("column " + std::to_string(i + 1) + " is zero");
  }
  return F;
}

EdgeTable::EdgeTable(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  out_.assign(n_, {});
  in_.assign(n_, {});
  between_.assign(n_, std::vector<int>(n_, -1));
  for (const Edge& e : edges_) {
    out_[e.source].push_back(e.id);
    in_[e.range].push_back(e.id);
    between_[e.source][e.range] = e.id;
  }
  for (auto& v : out_) std::sort(v.begin(), v.end());
  for (auto& v : in_) std::sort(v.begin(), v.end());
}

std::optional<EdgeId> EdgeTable::edge_between(Vertex v, Vertex w) const {
  int id = between_[v][w];
  if (id < 0) return std::nullopt;
  return id;
}

std::optional<EdgeId> EdgeTable::id_of_label(const std::string& label) const {
  if (label.size() < 2 || label[0] != 'e') return std::nullopt;
  int k = 0;
  for (size_t i = 1; i < label.size(); ++i) {
    if (!isdigit(static_cast<unsigned char>(label[i]))) return std::nullopt;
    k = k * 10 + (label[i] - '0');
  }
  if (k < 1 || k > size()) return std::nullopt;
  return k - 1;
}

EdgeTable build_edge_table(const ZeroOneMatrix& A) {
  std::vector<Edge> edges;
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j)
      if (A.at(i, j) == 1) edges.push_back(Edge{int(edges.size()), i, j});
  return EdgeTable(A.n, std::move(edges));
}

EdgeTable build_edge_table(const ZeroOneMatrix& A, const std::vector<Edge>& given) {
  if (int(given.size()) != A.total())
    throw InvalidInputError("edge label list has " + std::to_string(given.size()) +
                            " entries, matrix has " + std::to_string(A.total()) + " edges");
  std::vector<Edge> edges(given.size());
  std::vector<std::vector<int>> seen(A.n, std::vector<int>(A.n, 0));
  std::vector<int> id_used(given.size(), 0);
  for (const Edge& e : given) {
    if (e.id < 0 || e.id >= int(given.size())) throw InvalidInputError("edge id out of range");
    if (id_used[e.id]++) throw InvalidInputError("duplicate edge id e" + std::to_string(e.id + 1));
    if (e.source < 0 || e.source >= A.n || e.range < 0 || e.range >= A.n)
      throw InvalidInputError("edge endpoint out of range");
    if (A.at(e.source, e.range) != 1)
      throw InvalidInputError("edge e" + std::to_string(e.id + 1) + " labels a zero entry (" +
                              std::to_string(e.source + 1) + "," + std::to_string(e.range + 1) + ")");
    if (seen[e.source][e.range]++)
      throw InvalidInputError("entry (" + std::to_string(e.source + 1) + "," +
                              std::to_string(e.range + 1) + ") labeled twice");
    edges[e.id] = e;
  }
  return EdgeTable(A.n, std::move(edges));
}

Diagram Diagram::from_matrix(ZeroOneMatrix A) {
  Diagram D;
  D.edges = build_edge_table(A);
  D.A = std::move(A);
  return D;
}

Diagram Diagram::from_matrix(ZeroOneMatrix A, const std::vector<Edge>& edge_labels) {
  Diagram D;
  D.edges = build_edge_table(A, edge_labels);
  D.A = std::move(A);
  return D;
}

std::vector<std::pair<EdgeId, EdgeId>> linked_pairs(const EdgeTable& E) {
  std::vector<std::pair<EdgeId, EdgeId>> pairs;
  for (const Edge& e : E.edges())
    for (EdgeId f : E.out_edges(e.range)) pairs.emplace_back(e.id, f);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

CoupledGraph coupled_graph(const Diagram& D) {
  CoupledGraph G;
  G.size = D.edge_count();
  G.arrows = linked_pairs(D.edges);
  std::vector<std::vector<int>> adj(G.size, std::vector<int>(G.size, 0));
  for (auto [e, f] : G.arrows) adj[e][f] = 1;
  G.adjacency = ZeroOneMatrix::from_rows(std::move(adj));
  return G;
}

PrimitivityResult is_primitive(const ZeroOneMatrix& A) {
  PrimitivityResult res;
  res.bound = A.n * A.n - 2 * A.n + 2;
  // Boolean powers: pow = A^k as a reachability-in-exactly-k-steps matrix.
  std::vector<std::vector<char>> pow(A.n, std::vector<char>(A.n));
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) pow[i][j] = char(A.at(i, j));
  for (int k = 1; k <= res.bound; ++k) {
    bool positive = true;
    for (int i = 0; i < A.n && positive; ++i)
      for (int j = 0; j < A.n; ++j)
        if (!pow[i][j]) {
          positive = false;
          break;
        }
    if (positive) {
      res.primitive = true;
      res.exponent = k;
      return res;
    }
    std::vector<std::vector<char>> next(A.n, std::vector<char>(A.n, 0));
    for (int i = 0; i < A.n; ++i)
      for (int l = 0; l < A.n; ++l)
        if (pow[i][l])
          for (int j = 0; j < A.n; ++j)
            if (A.at(l, j)) next[i][j] = 1;
    pow.swap(next);
  }
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j)
      if (!pow[i][j]) {
        res.certificate = "A^" + std::to_string(res.bound) + " has a zero entry at (" +
                          std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          "); no power up to the Wielandt bound " + std::to_string(res.bound) +
                          " is positive";
        return res;
      }
  return res;
}

bool is_strongly_connected(const CoupledGraph& G) {
  // Tarjan, iterative not needed at this scale.
  int n = G.size;
  std::vector<std::vector<int>> succ(n);
  for (auto [e, f] : G.arrows) succ[e].push_back(f);
  std::vector<int> num(n, -1), low(n, 0), stack_index(n, -1);
  std::vector<int> stack;
  int counter = 0, scc_count = 0;
  std::function<void(int)> dfs = [&](int v) {
    num[v] = low[v] = counter++;
    stack_index[v] = int(stack.size());
    stack.push_back(v);
    for (int w : succ[v]) {
      if (num[w] == -1) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (stack_index[w] != -1) {
        low[v] = std::min(low[v], num[w]);
      }
    }
    if (low[v] == num[v]) {
      ++scc_count;
      while (int(stack.size()) > stack_index[v]) {
        stack_index[stack.back()] = -1;
        stack.pop_back();
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (num[v] == -1) dfs(v);
  return scc_count == 1;
}

ZeroOneMatrix zero_one_reduction(const NonNegIntMatrix& F) {
  // Row-major enumeration of the edge multiset; parallel edges get
  // consecutive ids.
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < F.n; ++i)
    for (int j = 0; j < F.n; ++j)
      for (long long c = 0; c < F.entries[i][j]; ++c) edges.emplace_back(i, j);
  int m = int(edges.size());
  std::vector<std::vector<int>> adj(m, std::vector<int>(m, 0));
  for (int e = 0; e < m; ++e)
    for (int f = 0; f < m; ++f)
      if (edges[e].second == edges[f].first) adj[e][f] = 1;
  return ZeroOneMatrix::from_rows(std::move(adj));
}

CylinderWord make_word(const EdgeTable& E, std::vector<EdgeId> edges) {
  if (edges.empty()) throw DomainError("empty edge word has no base vertex; use vertex_cylinder");
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    if (E.range(edges[i]) != E.source(edges[i + 1]))
      throw DomainError("word not linked at position " + std::to_string(i + 1) + ": r(" +
                        E.label(edges[i]) + ") != s(" + E.label(edges[i + 1]) + ")");
  CylinderWord w;
  w.base = E.source(edges.front());
  w.edges = std::move(edges);
  return w;
}

CylinderWord vertex_cylinder(Vertex v) {
  CylinderWord w;
  w.base = v;
  return w;
}

CylinderWord prepend(const EdgeTable& E, EdgeId e, const CylinderWord& w) {
  if (E.range(e) != w.base)
    throw DomainError("cannot prepend " + E.label(e) + ": r(" + E.label(e) + ") != base vertex " +
                      std::to_string(w.base + 1));
  CylinderWord out;
  out.base = E.source(e);
  out.edges.reserve(w.edges.size() + 1);
  out.edges.push_back(e);
  out.edges.insert(out.edges.end(), w.edges.begin(), w.edges.end());
  return out;
}

CylinderWord drop_first(const EdgeTable& E, const CylinderWord& w) {
  if (w.depth() == 0) throw DomainError("coding map undefined on depth-0 cylinders");
  CylinderWord out;
  out.base = E.range(w.edges.front());
  out.edges.assign(w.edges.begin() + 1, w.edges.end());
  return out;
}

std::string word_str(const EdgeTable& E, const CylinderWord& w) {
  if (w.depth() == 0) return "[v" + std::to_string(w.base + 1) + "]";
  std::string s = "(";
  for (size_t i = 0; i < w.edges.size(); ++i) {
    if (i) s += ",";
    s += E.label(w.edges[i]);
  }
  return s + ")";
}

std::vector<CylinderWord> path_words(const Diagram& D, int depth) {
  if (depth < 0) throw DomainError("negative depth");
  std::vector<CylinderWord> out;
  if (depth == 0) {
    for (Vertex v = 0; v < D.A.n; ++v) out.push_back(vertex_cylinder(v));
    return out;
  }
  std::vector<EdgeId> current;
  std::function<void()> rec = [&]() {
    if (int(current.size()) == depth) {
      CylinderWord w;
      w.base = D.edges.source(current.front());
      w.edges = current;
      out.push_back(std::move(w));
      return;
    }
    if (current.empty()) {
      for (const Edge& e : D.edges.edges()) {
        current.push_back(e.id);
        rec();
        current.pop_back();
      }
    } else {
      for (EdgeId f : D.edges.out_edges(D.edges.range(current.back()))) {
        current.push_back(f);
        rec();
        current.pop_back();
      }
    }
  };
  rec();
  return out;
}

}  // namespace ckb
