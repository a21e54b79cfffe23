#ifndef CKB_SFS_HPP_
#define CKB_SFS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ckb/diagram.hpp"

namespace ckb {

/// One-sided shift of finite type: words over a letter alphabet with a 0-1
/// follow relation. Edge words of a diagram and vertex words of its matrix
/// are both instances.
struct ShiftSpace {
  int letter_count = 0;
  std::vector<std::vector<int>> follow;  // follow[a][b] = 1 iff b may follow a
  std::vector<std::string> names;

  std::vector<std::vector<int>> words(int len) const;  // lex order
  bool admissible(const std::vector<int>& w) const;
  std::string str(const std::vector<int>& w) const;
};

ShiftSpace edge_shift(const Diagram& D);
ShiftSpace vertex_shift(const ZeroOneMatrix& A);

/// Finite union of cylinders, all described by prefixes of one length.
struct CylinderSet {
  int prefix_len = 1;
  std::vector<std::vector<int>> members;  // sorted, admissible, distinct

  bool contains(const std::vector<int>& w) const;  // len(w) >= prefix_len
  /// All admissible words of the given length with a prefix in the set.
  std::vector<std::vector<int>> refine(const ShiftSpace& S, int len) const;
};

CylinderSet letter_cylinders(std::vector<int> letters);

/// Prepend-type semibranching system: index i acts by prepending letter i,
/// with domain D_i and range R_i given as cylinder unions; the coding map
/// drops the first letter.
struct SFSDescriptor {
  ShiftSpace space;
  std::vector<CylinderSet> domains;
  std::vector<CylinderSet> ranges;

  int index_count() const { return int(domains.size()); }

  /// sigma_i; throws DomainError off D_i.
  std::vector<int> apply(int i, const std::vector<int>& w) const;
  /// Coding map (drop first letter); words of length >= 2.
  std::vector<int> code(const std::vector<int>& w) const;
};

/// D_e = words whose first letter is sourced at r(e); R_e = first letter e.
SFSDescriptor edge_sfs(const Diagram& D);
/// D_i = words x with a_{i,x_1} = 1; R_i = first letter i.
SFSDescriptor vertex_sfs(const ZeroOneMatrix& A);

struct CKMatrix {
  std::vector<std::vector<int>> entries;
  bool operator==(const CKMatrix& o) const { return entries == o.entries; }
};

bool ck_matrix_equals(const CKMatrix& M, const ZeroOneMatrix& A);

struct SaturationReport {
  bool saturated = true;
  std::optional<std::vector<int>> uncovered;  // witness word
};

SaturationReport saturation_check(const SFSDescriptor& s, int depth);

struct CKConditionError : Error {
  std::vector<int> witness;
  CKConditionError(const std::string& what, std::vector<int> w) : Error(what), witness(std::move(w)) {}
};

/// Finds, for each index i, the set of ranges whose disjoint union is D_i
/// and returns the induced 0-1 matrix. Throws CKConditionError with a
/// witness word when the system is unsaturated, has overlapping ranges, or a
/// domain that is not an exact union of ranges.
CKMatrix ck_condition(const SFSDescriptor& s);

/// Vertex word (x_1..x_{k+1}) of the matrix shift <-> linked edge word of
/// depth k. Length-1 vertex words correspond to depth-0 cylinders.
std::vector<Vertex> edge_to_vertex_word(const EdgeTable& E, const CylinderWord& w);
CylinderWord vertex_to_edge_word(const Diagram& D, const std::vector<Vertex>& vw);

struct RefinementReport {
  bool ok = true;
  std::string failed_identity;               // "ranges", "domains", "maps", "coding"
  std::optional<std::vector<int>> witness;   // vertex word (or edge word for maps/coding)
};

/// Verifies at depth k, under word translation, that the edge system refines
/// the vertex system: R_i = union of R~_e over s(e) = i, D_i = union of the
/// D~_e with an edge i -> r(e), sigma_i restricted to D~_e equals sigma~_e,
/// and the coding maps agree.
RefinementReport refinement_check(const Diagram& D, const SFSDescriptor& edge,
                                  const SFSDescriptor& vertex, int depth);

}  // namespace ckb

#endif  // CKB_SFS_HPP_
