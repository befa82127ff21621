#include "doctest.h"
#include "sba/errors.hpp"
#include "sba/matrix.hpp"
#include "sba/sparse.hpp"

using namespace sba;

namespace {

// Local deterministic generator, independent of the library's RNG.
struct TestRng {
  unsigned long long s;
  unsigned long long next() {
    s += 0x9E3779B97F4A7C15ull;
    unsigned long long z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  int below(int n) { return (int)(next() % (unsigned long long)n); }
};

Mat random_small_mat(TestRng& rng, int rows, int cols, Field f) {
  Mat m(rows, cols, f);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = f.from_int(rng.below(7) - 3);
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic normalizes and is exact") {
  Field Q = Field::rationals();
  Scalar a = Q.from_ratio(2, 4);
  CHECK(a.num == 1);
  CHECK(a.den == 2);
  Scalar b = Q.from_ratio(-3, -6);
  CHECK(b.num == 1);
  CHECK(b.den == 2);
  Scalar s = Q.add(a, Q.from_ratio(1, 3));
  CHECK(Q.to_string(s) == "5/6");
  CHECK(Q.eq(Q.mul(s, Q.inv(s)), Q.one()));
  CHECK(Q.to_string(Q.sub(Q.from_int(0), Q.from_ratio(7, 2))) == "-7/2");
  CHECK(Q.eq(Q.parse("-7/2"), Q.from_ratio(7, -2)));
  CHECK_THROWS_AS(Q.inv(Q.zero()), InputError);
  CHECK_THROWS_AS(Q.parse("1/0"), InputError);
  CHECK_THROWS_AS(Q.parse("x"), InputError);
}

TEST_CASE("rational overflow raises instead of wrapping") {
  Field Q = Field::rationals();
  Scalar big = Q.from_int((1LL << 61));
  CHECK_THROWS_AS(Q.mul(big, big), OverflowError);
  CHECK_THROWS_AS(Q.add(big, big), OverflowError);  // hits 2^62 exactly
  CHECK_NOTHROW(Q.add(big, Q.one()));
}

TEST_CASE("prime field arithmetic") {
  CHECK_THROWS_AS(Field::prime(4), InputError);
  CHECK_THROWS_AS(Field::prime(2), InputError);
  Field F = Field::prime(7);
  Scalar five = F.from_int(-2);
  CHECK(five.num == 5);
  CHECK(F.eq(F.mul(F.from_int(3), F.inv(F.from_int(3))), F.one()));
  CHECK(F.eq(F.from_ratio(1, 2), F.from_int(4)));  // 2 * 4 = 8 = 1 mod 7
  CHECK_THROWS_AS(F.from_ratio(1, 7), InputError);
}

TEST_CASE("rank and nullspace on pinned matrices") {
  Field Q = Field::rationals();
  // [1 2 3; 2 4 6; 1 0 1] has rank 2.
  Mat m(3, 3, Q);
  int vals[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = Q.from_int(vals[i][j]);
  CHECK(rank(m) == 2);
  auto ns = nullspace_basis(m);
  REQUIRE(ns.size() == 1);
  // Kernel vector must satisfy both independent rows.
  for (int i = 0; i < 3; ++i) {
    Scalar acc = Q.zero();
    for (int j = 0; j < 3; ++j) acc = Q.add(acc, Q.mul(m.at(i, j), ns[0][j]));
    CHECK(Q.is_zero(acc));
  }
  CHECK(rank(Mat::identity(4, Q)) == 4);
  CHECK(nullspace_basis(Mat::identity(4, Q)).empty());
  CHECK(nullspace_basis(Mat(2, 3, Q)).size() == 3);
}

TEST_CASE("rank-nullity holds on seeded random matrices over Q and F_p") {
  TestRng rng{42};
  for (Field f : {Field::rationals(), Field::prime(1000003)}) {
    for (int trial = 0; trial < 30; ++trial) {
      int rows = 1 + rng.below(6), cols = 1 + rng.below(6);
      Mat m = random_small_mat(rng, rows, cols, f);
      int r = rank(m);
      auto ns = nullspace_basis(m);
      CHECK(r + (int)ns.size() == cols);
      for (auto& v : ns) {
        auto image = m.apply(v);
        for (auto& x : image) CHECK(f.is_zero(x));
      }
      // Nullspace vectors are independent.
      RowSpace rs(f);
      for (auto& v : ns) CHECK(rs.add(v));
    }
  }
}

TEST_CASE("in_span returns usable coefficients") {
  Field Q = Field::rationals();
  std::vector<std::vector<Scalar>> vecs = {
      {Q.from_int(1), Q.from_int(0), Q.from_int(2)},
      {Q.from_int(0), Q.from_int(1), Q.from_int(-1)},
  };
  std::vector<Scalar> target = {Q.from_int(3), Q.from_int(2), Q.from_int(4)};
  auto coeffs = in_span(vecs, target, Q);
  REQUIRE(coeffs.has_value());
  for (size_t i = 0; i < target.size(); ++i) {
    Scalar acc = Q.zero();
    for (size_t j = 0; j < vecs.size(); ++j)
      acc = Q.add(acc, Q.mul((*coeffs)[j], vecs[j][i]));
    CHECK(Q.eq(acc, target[i]));
  }
  std::vector<Scalar> outside = {Q.from_int(0), Q.from_int(0), Q.from_int(1)};
  CHECK_FALSE(in_span(vecs, outside, Q).has_value());
  CHECK(in_span({}, {Q.zero(), Q.zero()}, Q).has_value());
  CHECK_FALSE(in_span({}, {Q.one()}, Q).has_value());
}

TEST_CASE("quotient_basis picks complements and checks its precondition") {
  Field Q = Field::rationals();
  std::vector<std::vector<Scalar>> ambient = {
      {Q.from_int(1), Q.from_int(0)},
      {Q.from_int(1), Q.from_int(1)},
      {Q.from_int(0), Q.from_int(1)},
  };
  std::vector<std::vector<Scalar>> sub = {{Q.from_int(1), Q.from_int(1)}};
  auto picked = quotient_basis(ambient, sub, Q);
  REQUIRE(picked.size() == 1);
  CHECK(picked[0] == 0);  // first ambient vector already extends the span
  std::vector<std::vector<Scalar>> bad_sub = {{Q.from_int(1), Q.from_int(2)}};
  CHECK_NOTHROW(quotient_basis(ambient, bad_sub, Q));
  std::vector<std::vector<Scalar>> tiny_ambient = {{Q.from_int(1), Q.from_int(0)}};
  CHECK_THROWS_AS(quotient_basis(tiny_ambient, bad_sub, Q), InternalError);
}

TEST_CASE("sparse solver agrees with the dense nullspace oracle") {
  TestRng rng{7};
  for (Field f : {Field::rationals(), Field::prime(101)}) {
    for (int trial = 0; trial < 40; ++trial) {
      int vars = 2 + rng.below(10);
      int eqs = rng.below(12);
      SparseSolver solver(vars, f);
      Mat dense(eqs, vars, f);
      for (int e = 0; e < eqs; ++e) {
        int terms = 1 + rng.below(4);
        std::vector<std::pair<int, Scalar>> eq;
        for (int t = 0; t < terms; ++t) {
          int v = rng.below(vars);
          Scalar c = f.from_int(rng.below(5) - 2);
          eq.emplace_back(v, c);
          dense.at(e, v) = f.add(dense.at(e, v), c);
        }
        solver.add_equation(eq);
      }
      auto sparse_basis = solver.solve();
      auto dense_basis = nullspace_basis(dense);
      CHECK(sparse_basis.size() == dense_basis.size());
      RowSpace span_dense(f);
      for (auto& v : dense_basis) span_dense.add(v);
      RowSpace span_sparse(f);
      for (auto& v : sparse_basis) {
        CHECK(span_dense.contains(v));
        CHECK(span_sparse.add(v));  // independence
      }
    }
  }
}

TEST_CASE("rank agrees across Q and F_p on 0/1 matrices") {
  TestRng rng{99};
  Field Q = Field::rationals();
  Field F = Field::prime(1000003);
  for (int trial = 0; trial < 20; ++trial) {
    int rows = 1 + rng.below(7), cols = 1 + rng.below(7);
    Mat a(rows, cols, Q), b(rows, cols, F);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        int bit = rng.below(2);
        a.at(i, j) = Q.from_int(bit);
        b.at(i, j) = F.from_int(bit);
      }
    CHECK(rank(a) == rank(b));
  }
}

TEST_CASE("matrix product and flatten round-trip") {
  Field Q = Field::rationals();
  Mat a(2, 3, Q), b(3, 2, Q);
  int av[2][3] = {{1, 2, 0}, {0, 1, -1}};
  int bv[3][2] = {{1, 0}, {2, 1}, {0, 3}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) a.at(i, j) = Q.from_int(av[i][j]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) b.at(i, j) = Q.from_int(bv[i][j]);
  Mat p = a.mul(b);
  CHECK(p.at(0, 0).num == 5);
  CHECK(p.at(0, 1).num == 2);
  CHECK(p.at(1, 0).num == 2);
  CHECK(p.at(1, 1).num == -2);
  Mat back = Mat::unflatten(p.flatten(), 2, 2, Q);
  CHECK(back.equals(p));
  CHECK(a.transpose().at(2, 1).num == -1);
}
