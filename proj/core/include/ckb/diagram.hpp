#ifndef CKB_DIAGRAM_HPP_
#define CKB_DIAGRAM_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckb/scalar.hpp"

namespace ckb {

using Vertex = int;  // 0-based
using EdgeId = int;  // 0-based; display name "e1" corresponds to id 0

/// Square 0-1 matrix with no zero row and no zero column. Row v lists the
/// receiving vertices of the edges sourced at v.
struct ZeroOneMatrix {
  int n = 0;
  std::vector<std::vector<int>> entries;

  /// Validates shape, 0-1 entries, and surjectivity of source/range maps.
  static ZeroOneMatrix from_rows(std::vector<std::vector<int>> rows);

  int at(Vertex i, Vertex j) const { return entries[i][j]; }
  bool operator==(const ZeroOneMatrix& o) const { return n == o.n && entries == o.entries; }

  int row_sum(Vertex i) const;  // outdegree of i
  int col_sum(Vertex j) const;  // indegree of j
  int total() const;
};

/// Square matrix of nonnegative integers with no zero row/column; entry
/// (v, w) counts parallel edges from v to w.
struct NonNegIntMatrix {
  int n = 0;
  std::vector<std::vector<long long>> entries;

  static NonNegIntMatrix from_rows(std::vector<std::vector<long long>> rows);
};

struct Edge {
  EdgeId id;
  Vertex source;
  Vertex range;
};

/// The enumerated edge set of a 0-1 matrix: a bijection between edge ids and
/// nonzero entries, plus source/range lookup structures.
class EdgeTable {
 public:
  EdgeTable() = default;
  EdgeTable(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int size() const { return int(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  Vertex source(EdgeId e) const { return edges_[e].source; }
  Vertex range(EdgeId e) const { return edges_[e].range; }

  const std::vector<EdgeId>& out_edges(Vertex v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(Vertex v) const { return in_[v]; }

  /// The unique edge v -> w, if a_{v,w} = 1.
  std::optional<EdgeId> edge_between(Vertex v, Vertex w) const;

  std::string label(EdgeId e) const { return "e" + std::to_string(e + 1); }
  std::optional<EdgeId> id_of_label(const std::string& label) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_, in_;
  std::vector<std::vector<int>> between_;  // [v][w] = edge id or -1
};

/// Row-major enumeration: e1 is the first nonzero entry of row 1.
EdgeTable build_edge_table(const ZeroOneMatrix& A);

/// Enumeration supplied by the caller (when an external numbering must be
/// preserved). `given[k]` holds the source/range of the edge with id k;
/// the list must be a bijection onto the nonzero entries of A.
EdgeTable build_edge_table(const ZeroOneMatrix& A, const std::vector<Edge>& given);

/// A 0-1 matrix together with its enumerated edge set.
struct Diagram {
  ZeroOneMatrix A;
  EdgeTable edges;

  static Diagram from_matrix(ZeroOneMatrix A);
  static Diagram from_matrix(ZeroOneMatrix A, const std::vector<Edge>& edge_labels);
  int edge_count() const { return edges.size(); }
};

/// All ordered pairs (e, f) with r(e) = s(f), sorted.
std::vector<std::pair<EdgeId, EdgeId>> linked_pairs(const EdgeTable& E);

/// Directed graph on the edge set: an arrow e -> f whenever f can follow e.
struct CoupledGraph {
  int size = 0;                                  // |E|
  std::vector<std::pair<EdgeId, EdgeId>> arrows; // sorted
  ZeroOneMatrix adjacency;                       // |E| x |E|
};

CoupledGraph coupled_graph(const Diagram& D);

struct PrimitivityResult {
  bool primitive = false;
  int exponent = 0;          // smallest k with A^k > 0 when primitive
  int bound = 0;             // Wielandt cutoff n^2 - 2n + 2
  std::string certificate;   // failure description when not primitive
};

/// Decides primitivity by checking boolean powers up to the Wielandt bound.
PrimitivityResult is_primitive(const ZeroOneMatrix& A);

bool is_strongly_connected(const CoupledGraph& G);

/// Replaces a diagram with integer multiplicities by the 0-1 diagram on its
/// edge multiset: entry (v, w) contributes that many parallel edges, and the
/// output matrix marks which edge can follow which.
ZeroOneMatrix zero_one_reduction(const NonNegIntMatrix& F);

/// A linked word of edges; depth 0 is the cylinder of all paths through a
/// single vertex.
struct CylinderWord {
  Vertex base = 0;               // s(w_1) for depth >= 1, the vertex itself at depth 0
  std::vector<EdgeId> edges;

  int depth() const { return int(edges.size()); }
  Vertex range(const EdgeTable& E) const { return edges.empty() ? base : E.range(edges.back()); }

  bool operator==(const CylinderWord& o) const { return base == o.base && edges == o.edges; }
  bool operator<(const CylinderWord& o) const {
    if (edges.size() != o.edges.size()) return edges.size() < o.edges.size();
    if (edges.empty()) return base < o.base;
    return edges < o.edges;
  }
};

/// Validating constructor; throws DomainError if the letters are not linked.
CylinderWord make_word(const EdgeTable& E, std::vector<EdgeId> edges);
CylinderWord vertex_cylinder(Vertex v);

/// e . w (prepend); requires r(e) = base(w).
CylinderWord prepend(const EdgeTable& E, EdgeId e, const CylinderWord& w);
/// Coding map: drop the first letter (depth >= 1).
CylinderWord drop_first(const EdgeTable& E, const CylinderWord& w);

std::string word_str(const EdgeTable& E, const CylinderWord& w);

/// All linked words of the given depth, lexicographic by edge id. depth 0
/// yields the vertex cylinders in vertex order.
std::vector<CylinderWord> path_words(const Diagram& D, int depth);

}  // namespace ckb

#endif  // CKB_DIAGRAM_HPP_
