#pragma once
#include <optional>
#include <vector>

#include "sba/field.hpp"

namespace sba {

// Dense matrix over a fixed Field, row-major storage.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, Field f)
      : rows_(rows), cols_(cols), field_(f), data_((size_t)rows * cols, f.zero()) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& at(int r, int c) { return data_[(size_t)r * cols_ + c]; }
  const Scalar& at(int r, int c) const { return data_[(size_t)r * cols_ + c]; }

  static Mat identity(int n, Field f);

  Mat mul(const Mat& rhs) const;  // this * rhs
  Mat add(const Mat& rhs) const;
  Mat scaled(const Scalar& s) const;
  Mat transpose() const;
  bool is_zero() const;
  bool equals(const Mat& rhs) const;

  // this * v for a column vector v.
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

  // Row-major flattening, for treating a map as a vector of coordinates.
  std::vector<Scalar> flatten() const { return data_; }
  static Mat unflatten(const std::vector<Scalar>& v, int rows, int cols, Field f);

 private:
  int rows_ = 0, cols_ = 0;
  Field field_ = Field::rationals();
  std::vector<Scalar> data_;
};

// Reduces m in place to reduced row echelon form; returns the pivot columns
// in increasing order. Pivot choice is first nonzero entry, so the result is
// deterministic for a given input.
std::vector<int> rref(Mat& m);

int rank(Mat m);

// Basis of {x : m x = 0}; one vector per free column, in increasing column order.
std::vector<std::vector<Scalar>> nullspace_basis(Mat m);

// Coefficients c with sum c[i] * vecs[i] = target, or nullopt if target is
// outside the span. All vectors must share the same length.
std::optional<std::vector<Scalar>> in_span(const std::vector<std::vector<Scalar>>& vecs,
                                           const std::vector<Scalar>& target, Field f);

// Incremental row space in reduced echelon form.
class RowSpace {
 public:
  explicit RowSpace(Field f) : field_(f) {}

  // Absorbs v; returns true when v enlarged the span.
  bool add(std::vector<Scalar> v);
  bool contains(std::vector<Scalar> v) const;
  int rank() const { return (int)rows_.size(); }

 private:
  void reduce(std::vector<Scalar>& v) const;
  Field field_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<int> pivots_;
};

// Indices into ambient picking a basis of span(ambient) modulo span(sub).
// Requires every element of sub to lie in span(ambient).
std::vector<int> quotient_basis(const std::vector<std::vector<Scalar>>& ambient,
                                const std::vector<std::vector<Scalar>>& sub, Field f);

}  // namespace sba
