#pragma once
#include <optional>
#include <string>
#include <vector>

#include "sba/matrix.hpp"
#include "sba/strings.hpp"

namespace sba {

// One nonzero entry of an arrow action: coordinate `from` maps to `value`
// times coordinate `to`.
struct Triplet {
  int to;
  int from;
  Scalar value;
};

// A right module given by explicit coordinates: each coordinate sits at a
// vertex, each arrow acts by a sparse matrix. Constructors verify that the
// action respects the grading and annihilates the defining relations.
struct ExplicitModule {
  const Algebra* alg = nullptr;
  std::vector<int> vertex_of;
  std::vector<std::vector<Triplet>> action;  // one triplet list per arrow
  std::string provenance;

  int dim() const { return (int)vertex_of.size(); }
  Mat action_dense(int arrow) const;
  Mat path_action(const Path& p) const;
  std::vector<int> coords_at(int vertex) const;
};

// Grading + relation check; throws InternalError on violation.
void verify_module(const ExplicitModule& m);

ExplicitModule string_module(const Algebra& A, const Word& w);
ExplicitModule simple_module(const Algebra& A, int vertex);

// Indecomposable projective e_v A on the path classes from v; cached per
// algebra.
const ExplicitModule& projective_module(const Algebra& A, int vertex);

// Band module: |b| * n coordinates; the last letter of b carries the n x n
// Jordan block with eigenvalue lambda (lambda != 0).
ExplicitModule band_module(const Algebra& A, const Word& b, const Scalar& lambda, int n);

ExplicitModule direct_sum(const Algebra& A, const std::vector<const ExplicitModule*>& parts);
// Coordinate offset of each part inside the sum, plus the total.
std::vector<int> sum_offsets(const std::vector<const ExplicitModule*>& parts);

// F is a module map m -> n: respects the vertex grading and intertwines
// every arrow action. F has n.dim() rows, m.dim() columns.
bool is_module_hom(const ExplicitModule& m, const ExplicitModule& n, const Mat& F);

// Coordinates whose residues form a basis of m / (m * radical), grouped by
// vertex in coordinate order.
std::vector<int> top_basis(const ExplicitModule& m);

// Structure of an indecomposable projective as a string module.
struct ProjectiveShape {
  bool nonserial = false;  // has the merged class: projective-injective
  int comm_index = -1;     // when nonserial
  Word radical_word;       // nonserial: rad P as a string module
  Word soc_factor_word;    // nonserial: P / soc as a string module
  Word string_word;        // serial: P itself as a string module
};

// Classifies P_v and certifies the claim by an explicit isomorphism
// (serial case) or by the radical inclusion and socle quotient maps
// (nonserial case). Throws InternalError if certification fails.
ProjectiveShape classify_projective(const Algebra& A, int vertex);

// Lazily built per-algebra data.
struct AlgebraCaches {
  std::vector<std::optional<ExplicitModule>> projectives;
};

}  // namespace sba
