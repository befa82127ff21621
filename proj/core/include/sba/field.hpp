#pragma once
#include <string>

namespace sba {

// Exact scalar. Over Q: num/den with den > 0 and gcd(num, den) = 1.
// Over F_p: residue num in [0, p) with den = 1.
struct Scalar {
  long long num = 0;
  long long den = 1;
};

// Arithmetic context: p() == 0 selects Q, otherwise F_p for an odd prime p < 2^31.
// All Scalar values flowing through a Field are kept in canonical form, so
// equality of canonical forms is equality of field elements.
class Field {
 public:
  static Field rationals();
  static Field prime(long long p);

  long long p() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  Scalar zero() const { return {0, 1}; }
  Scalar one() const { return from_int(1); }
  Scalar from_int(long long n) const;
  Scalar from_ratio(long long num, long long den) const;

  bool is_zero(const Scalar& a) const { return a.num == 0; }
  bool is_one(const Scalar& a) const { return a.num == 1 && a.den == 1; }
  bool eq(const Scalar& a, const Scalar& b) const {
    return a.num == b.num && a.den == b.den;
  }

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar div(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;

  std::string to_string(const Scalar& a) const;
  // Accepts "7", "-7", "7/2".
  Scalar parse(const std::string& text) const;

 private:
  explicit Field(long long p) : p_(p) {}
  long long p_ = 0;
};

}  // namespace sba
