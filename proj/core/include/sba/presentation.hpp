#pragma once
#include <array>
#include <map>
#include <string>
#include <vector>

namespace sba {

// A path is a composable sequence of arrow indices, read left to right:
// the endpoint of p[i] is the start of p[i+1].
using Path = std::vector<int>;

struct Arrow {
  std::string name;
  int src = -1;
  int dst = -1;
};

// A quiver with zero relations (paths declared zero) and commutativity
// relations (pairs of parallel paths declared equal).
struct Presentation {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Path> zero_relations;
  std::vector<std::array<Path, 2>> comm_relations;

  int vertex_index(const std::string& name) const;  // -1 when absent
  int arrow_index(const std::string& name) const;   // -1 when absent
  int path_src(const Path& p) const { return arrows[p.front()].src; }
  int path_dst(const Path& p) const { return arrows[p.back()].dst; }
  bool composable(const Path& p) const;
  std::string path_name(const Path& p) const;  // space-separated arrow names

  // Zero relations plus both components of every commutativity relation.
  std::vector<Path> rho_plus() const;

  int in_degree(int vertex) const;
  int out_degree(int vertex) const;
};

// Text format, one declaration per line, '#' starts a comment:
//   vertex <id> [<id> ...]
//   arrow <id>: <src> -> <dst>
//   zero <arrow> <arrow> [...]
//   comm <arrow> [...] = <arrow> [...]
// Identifiers are alphanumeric/underscore. Throws InputError on malformed input.
Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& file_path);

// Deterministic round-trippable serialization; equal presentations (same
// declaration order) produce identical text.
std::string canonical_text(const Presentation& p);

struct CheckReport {
  bool ok = true;
  std::string witness;  // human-readable reason when !ok
};

// Checks: (1) every vertex has at most two incoming and two outgoing arrows;
// (2) every arrow has at most one continuation and one predecessor whose
// length-2 product is not declared zero; commutativity components are sane
// (length >= 2, parallel, no factor inside another relation); (3) the algebra
// is finite dimensional, i.e. only finitely many paths avoid the relations.
CheckReport validate_special_biserial(const Presentation& p);

// Special biserial plus: (4) no commutativity relations and every zero
// relation has length exactly two; (5) every arrow extends at most one
// declared-zero product on each side.
CheckReport validate_gentle(const Presentation& p);

// One orientation sign pair per arrow, each +1 or -1.
struct SignAssignment {
  std::vector<int> sigma;
  std::vector<int> eps;
};

// Assigns signs subject to:
//   distinct co-initial arrows get opposite sigma;
//   distinct co-terminal arrows get opposite eps;
//   eps(a) = -sigma(b) when ab is a nonzero product, and also when the
//   product is a relation but a, b are the only arrows through the middle
//   vertex. Deterministic (declaration order, +1 tried first); throws
//   ValidationError when no assignment exists.
SignAssignment compute_signs(const Presentation& p);

// One basis element of the algebra: a relation-avoiding path from src, or the
// merged class of the two components of commutativity relation comm_index.
struct BasisPath {
  int src = -1;
  Path arrows;
  int comm_index = -1;
  bool merged() const { return comm_index >= 0; }
};

// All basis elements, sorted by (src, plain-before-merged, length, arrow
// indices). Doubles as the finiteness check: throws ValidationError with a
// cycle witness when the avoiding paths are unbounded.
std::vector<BasisPath> enumerate_basis(const Presentation& p);

// Lookup and right multiplication over an enumerated basis.
class BasisIndex {
 public:
  BasisIndex() = default;
  BasisIndex(const Presentation& p, const std::vector<BasisPath>& basis);

  int find_plain(int src, const Path& arrows) const;  // -1 when not a basis path
  int find_merged(int comm_index) const;

  // Index of (basis element) * (arrow), or -1 when the product is zero.
  int right_mult(int elem, int arrow) const { return mult_[elem][arrow]; }

  int end_vertex(int elem) const { return end_vertex_[elem]; }

 private:
  std::map<std::pair<int, Path>, int> plain_;
  std::vector<int> merged_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> end_vertex_;
};

}  // namespace sba
