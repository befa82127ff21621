#include "sba/field.hpp"

#include <cstdlib>

#include "sba/errors.hpp"

namespace sba {
namespace {

using i128 = __int128;

// Magnitude budget: one more multiply of two in-range values still fits in i128,
// so every intermediate below is overflow-safe and only the final clamp can throw.
constexpr i128 kLimit = (i128)1 << 62;

long long clamp(i128 v) {
  if (v >= kLimit || v <= -kLimit)
    throw OverflowError("exact rational arithmetic left the 62-bit magnitude budget");
  return (long long)v;
}

Scalar make_ratio(i128 num, i128 den) {
  if (den == 0) throw InputError("zero denominator");
  if (num == 0) return {0, 1};
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return {clamp(num / a), clamp(den / a)};
}

long long mod_reduce(i128 v, long long p) {
  long long r = (long long)(v % p);
  return r < 0 ? r + p : r;
}

long long mod_inverse(long long a, long long p) {
  // Extended Euclid; a is a nonzero residue, p prime.
  long long old_r = a, r = p, old_s = 1, s = 0;
  while (r != 0) {
    long long q = old_r / r;
    long long t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return mod_reduce(old_s, p);
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Field Field::rationals() { return Field(0); }

Field Field::prime(long long p) {
  if (p <= 2 || p >= (1LL << 31) || !is_prime(p))
    throw InputError("field modulus must be an odd prime below 2^31, got " + std::to_string(p));
  return Field(p);
}

Scalar Field::from_int(long long n) const {
  if (p_ == 0) return {n, 1};
  return {mod_reduce(n, p_), 1};
}

Scalar Field::from_ratio(long long num, long long den) const {
  if (p_ == 0) return make_ratio(num, den);
  Scalar d = from_int(den);
  if (d.num == 0) throw InputError("denominator vanishes in the chosen prime field");
  return mul(from_int(num), inv(d));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (p_ == 0)
    return make_ratio((i128)a.num * b.den + (i128)b.num * a.den, (i128)a.den * b.den);
  return {mod_reduce((i128)a.num + b.num, p_), 1};
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (p_ == 0) return make_ratio((i128)a.num * b.num, (i128)a.den * b.den);
  return {mod_reduce((i128)a.num * b.num, p_), 1};
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar Field::neg(const Scalar& a) const {
  if (p_ == 0) return {-a.num, a.den};
  return {a.num == 0 ? 0 : p_ - a.num, 1};
}

Scalar Field::inv(const Scalar& a) const {
  if (a.num == 0) throw InputError("division by zero");
  if (p_ == 0) return make_ratio(a.den, a.num);
  return {mod_inverse(a.num, p_), 1};
}

std::string Field::to_string(const Scalar& a) const {
  if (a.den == 1) return std::to_string(a.num);
  return std::to_string(a.num) + "/" + std::to_string(a.den);
}

Scalar Field::parse(const std::string& text) const {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      size_t used = 0;
      long long n = std::stoll(text, &used);
      if (used != text.size()) throw InputError("");
      return from_int(n);
    }
    size_t used = 0;
    long long n = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw InputError("");
    long long d = std::stoll(text.substr(slash + 1), &used);
    if (used != text.size() - slash - 1) throw InputError("");
    return from_ratio(n, d);
  } catch (const std::exception&) {
    throw InputError("cannot parse scalar literal '" + text + "'");
  }
}

}  // namespace sba
