#include "sba/algebra.hpp"

#include "sba/errors.hpp"
#include "sba/modules.hpp"

namespace sba {

Algebra Algebra::make(Presentation p, Field f) {
  if (CheckReport r = validate_special_biserial(p); !r.ok)
    throw ValidationError("presentation is not special biserial: " + r.witness);
  Algebra A;
  A.signs = compute_signs(p);
  A.rho_plus = p.rho_plus();
  A.basis = enumerate_basis(p);
  A.index = BasisIndex(p, A.basis);
  A.pres = std::move(p);
  A.field = f;
  A.caches = std::make_shared<AlgebraCaches>();
  return A;
}

}  // namespace sba
