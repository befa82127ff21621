#pragma once
#include <optional>
#include <vector>

#include "sba/modules.hpp"
#include "sba/strings.hpp"

namespace sba {

// A factorization C = D*E*F remembered with its split: D = letters [0,i),
// E = [i,j), F = [j,n). Trivial parts carry the unique sign that keeps the
// threefold concatenation defined.
struct Triple {
  Word d, e, f;
  int i = 0, j = 0;
};

// Splits for which the window E carries a quotient of M(C): the letter
// entering the window ends inverse, the letter leaving it starts direct.
std::vector<Triple> factor_strings(const Algebra& A, const Word& c);
// Splits for which the window E carries a submodule of M(C).
std::vector<Triple> substrings(const Algebra& A, const Word& c);

// src in factor_strings(C1), dst in substrings(C2), middles agreeing up to
// direction: oriented when E1 == E2, otherwise E1 == inverse(E2).
struct AdmissiblePair {
  Triple src, dst;
  bool oriented = true;
};

struct PairClass {
  bool oriented = false;
  bool left_sided = false;   // oriented and both D parts empty
  bool right_sided = false;  // oriented and both F parts empty
  bool one_sided = false;
  bool weakly_one_sided = false;  // the pair or its right transform is one-sided
  bool two_sided = false;
};

// All admissible pairs, sorted by (|D1|, |E1|, oriented first), ties in
// generation order.
std::vector<AdmissiblePair> admissible_pairs(const Algebra& A, const Word& c1, const Word& c2);

// Present the same map with one string replaced by its inverse. Both fix
// oriented pairs and orient non-oriented ones.
AdmissiblePair transform_left(const Algebra& A, const Word& c1, const Word& c2,
                              const AdmissiblePair& a);  // pair on (inverse(c1), c2)
AdmissiblePair transform_right(const Algebra& A, const Word& c1, const Word& c2,
                               const AdmissiblePair& a);  // pair on (c1, inverse(c2))

PairClass classify_pair(const Algebra& A, const Word& c1, const Word& c2, const AdmissiblePair& a);

struct GraphMap {
  Word c1, c2;
  AdmissiblePair pair;
  PairClass cls;
  Mat mat;  // dim M(c2) rows by dim M(c1) columns
};

// The homomorphism M(c1) -> M(c2) attached to an admissible pair: identify
// the two windows, coordinatewise or reversed. Verified to intertwine all
// arrow actions; a failure is an internal error.
GraphMap graph_map(const Algebra& A, const Word& c1, const Word& c2, const AdmissiblePair& a);

// One graph map per admissible pair, duplicates by matrix removed: a basis
// of Hom(M(c1), M(c2)).
std::vector<GraphMap> hom_basis_graph(const Algebra& A, const Word& c1, const Word& c2);

// Matrix composite of f : M(c1) -> M(c2) and g : M(c2) -> M(c3); nullopt
// when zero, otherwise the unique graph map with that matrix.
std::optional<GraphMap> compose_graph(const Algebra& A, const GraphMap& f, const GraphMap& g);

// Independent of the string combinatorics: basis of Hom(m, n) by solving
// the intertwining equations F * act_m(arrow) = act_n(arrow) * F with
// vertex-blocked support.
std::vector<Mat> hom_linear(const ExplicitModule& m, const ExplicitModule& n);

}  // namespace sba
