#pragma once
#include <memory>

#include "sba/field.hpp"
#include "sba/presentation.hpp"

namespace sba {

struct AlgebraCaches;  // lazily built module-level data, owned via shared_ptr

// Validated computation context: presentation, sign assignment, scalar field,
// and the path-class basis. Immutable after construction.
struct Algebra {
  Presentation pres;
  SignAssignment signs;
  Field field = Field::rationals();
  std::vector<Path> rho_plus;
  std::vector<BasisPath> basis;
  BasisIndex index;
  std::shared_ptr<AlgebraCaches> caches;

  // Validates the presentation, computes signs and the basis.
  // Throws ValidationError when any step rejects the input.
  static Algebra make(Presentation p, Field f);

  int dim() const { return (int)basis.size(); }
  int num_vertices() const { return (int)pres.vertices.size(); }
  int num_arrows() const { return (int)pres.arrows.size(); }
};

}  // namespace sba
