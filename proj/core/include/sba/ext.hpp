#pragma once
#include <optional>
#include <vector>

#include "sba/graph_maps.hpp"
#include "sba/modules.hpp"

namespace sba {

// Minimal cover P0 ->> m: one indecomposable projective per top generator.
// Construction certifies surjectivity and minimality (no kernel vector
// touches a generator coordinate); failures are internal errors.
struct ProjectiveCover {
  ExplicitModule p0;
  std::vector<int> top_vertices;  // vertex of each summand, in top order
  Mat epi;                        // m.dim() rows, p0.dim() columns
};

ProjectiveCover projective_cover(const Algebra& A, const ExplicitModule& m);

// Kernel of the cover with the induced action; dim = dim P0 - dim m.
struct Syzygy {
  ProjectiveCover cover;
  ExplicitModule omega;
  Mat incl;  // p0.dim() rows, omega.dim() columns
};

Syzygy syzygy(const Algebra& A, const ExplicitModule& m);

// Ext^1(m, n) read off 0 -> Omega -> P0 -> m -> 0 as the cokernel of the
// restriction Hom(P0, n) -> Hom(Omega, n). Representatives are maps
// Omega -> n spanning a complement of the restricted subspace.
struct Ext1Space {
  int dimension = 0;
  std::vector<Mat> representatives;  // n.dim() rows, omega.dim() columns
};

Ext1Space ext1(const Algebra& A, const ExplicitModule& m, const ExplicitModule& n);

struct ShortExactSequence {
  ExplicitModule left, middle, right;
  Mat inj;   // middle.dim() rows, left.dim() columns
  Mat surj;  // right.dim() rows, middle.dim() columns
};

// inj injective, surj surjective, surj * inj = 0, dims add up, both maps
// intertwine the arrow actions. Together these force image = kernel.
bool verify_exact(const ShortExactSequence& s);

// The overlap extension
//   0 -> M(D1 E F1) -> M(D1 E F2) (+) M(D2 E F1) -> M(D2 E F2) -> 0
// attached to a two-sided pair with quotient window (D1,E,F1) and
// submodule window (D2,E,F2). Throws InputError when a concatenation is
// not a string, a window fails its boundary conditions, or the pair is
// weakly one-sided. The frame maps u1, u2, w1, w2 satisfy
// w1 u1 = w2 u2 = f_a, and the sequence certifies
// ext1(right, left) >= 1 because the middle is not left (+) right.
ShortExactSequence overlap_extension(const Algebra& A, const Word& d1, const Word& e,
                                     const Word& f1, const Word& d2, const Word& f2);

// Witnessing extension for a two-sided pair whose window word mixes letter
// directions. The pair is first presented with equal window words (flipping
// the target string when needed, so the right term may be the inverse
// presentation of the original target). nullopt when the middle
// concatenations fail to be strings; callers report those instances.
std::optional<ShortExactSequence> nondirect_middle_ext_witness(const Algebra& A,
                                                               const AdmissiblePair& a);

// One entry per two-sided admissible pair between c1 and c2: the witnessing
// extension (direct window: the overlap sequence; mixed window: the
// flipped-middle witness), its exactness, ext1(right, left), and the
// non-splitness certificate dim End(middle) != dim End(left (+) right).
struct OverlapWitness {
  AdmissiblePair pair;
  bool mixed = false;
  bool built = false;
  bool exact = false;
  bool nonsplit = false;
  int ext_dim = 0;
  std::optional<ShortExactSequence> ses;
};

std::vector<OverlapWitness> overlap_survey(const Algebra& A, const Word& c1, const Word& c2);

}  // namespace sba
