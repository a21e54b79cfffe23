#ifndef CKB_IO_HPP_
#define CKB_IO_HPP_

#include <string>
#include <vector>

#include "ckb/admissible.hpp"
#include "ckb/diagram.hpp"
#include "ckb/measure.hpp"

namespace ckb {

// Diagram JSON: { "n": int, "rows": [[0|1,...],...],
//                 "edge_labels": [{"id":"e1","s":1,"r":1}, ...] (optional) }.
// Vertices and edge ids are 1-based on the wire.
Diagram load_diagram(const std::string& json_text);
Diagram load_diagram_file(const std::string& path);
std::string diagram_json(const Diagram& D);

// Multigraph JSON: { "n": int, "rows": [[nonneg ints]] }.
NonNegIntMatrix load_multiplicity_matrix_file(const std::string& path);

// Measure JSON:
//   { "type": "invariant" }
//   { "type": "stationary", "pi": ["1/3",...], "P": [["p/q",...], ...] }
//   { "type": "sequence", "pi": [...], "Ps": [[...],...],
//     "tail": "repeat-last" | "stationary", "tail_P": [...] (when stationary) }
// Rationals are "p/q" strings, reals decimal strings.
MeasureSpec load_measure(const Diagram& D, const std::string& json_text);
MeasureSpec load_measure_file(const Diagram& D, const std::string& path);
std::string measure_json(const Diagram& D, const MeasureSpec& spec);

// Map JSON: { "map": { "e1": "e3", ... } }.
AdmissibleMap load_map(const Diagram& D, const Diagram& Dp, const std::string& json_text);
AdmissibleMap load_map_file(const Diagram& D, const Diagram& Dp, const std::string& path);
std::string map_json(const Diagram& D, const Diagram& Dp, const AdmissibleMap& alpha);

/// DOT export of the coupled graph: one node per edge id labeled "a_{i,j}",
/// one directed arc per arrow, both in deterministic order.
std::string coupled_graph_dot(const Diagram& D);

// Sparse triplet dump of a level operator, for golden-file comparisons:
// { "rows": [...row words...], "cols": [...], "entries": [[r,c,"value"],...] }.
class LevelOperator;
struct LevelSpace;
std::string operator_json(const Diagram& D, const LevelSpace& rows, const LevelSpace& cols,
                          const LevelOperator& op);

std::string read_file(const std::string& path);

}  // namespace ckb

#endif  // CKB_IO_HPP_
