#include "sba/matrix.hpp"

#include "sba/errors.hpp"

namespace sba {

Mat Mat::identity(int n, Field f) {
  Mat m(n, n, f);
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Mat Mat::mul(const Mat& rhs) const {
  if (cols_ != rhs.rows_) throw InternalError("matrix product shape mismatch");
  Mat out(rows_, rhs.cols_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (field_.is_zero(a)) continue;
      for (int j = 0; j < rhs.cols_; ++j) {
        const Scalar& b = rhs.at(k, j);
        if (field_.is_zero(b)) continue;
        out.at(i, j) = field_.add(out.at(i, j), field_.mul(a, b));
      }
    }
  return out;
}

Mat Mat::add(const Mat& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InternalError("matrix sum shape mismatch");
  Mat out(rows_, cols_, field_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
  return out;
}

Mat Mat::scaled(const Scalar& s) const {
  Mat out(rows_, cols_, field_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.mul(data_[i], s);
  return out;
}

Mat Mat::transpose() const {
  Mat out(cols_, rows_, field_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool Mat::is_zero() const {
  for (const Scalar& s : data_)
    if (!field_.is_zero(s)) return false;
  return true;
}

bool Mat::equals(const Mat& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  for (size_t i = 0; i < data_.size(); ++i)
    if (!field_.eq(data_[i], rhs.data_[i])) return false;
  return true;
}

std::vector<Scalar> Mat::apply(const std::vector<Scalar>& v) const {
  if ((int)v.size() != cols_) throw InternalError("matrix apply shape mismatch");
  std::vector<Scalar> out(rows_, field_.zero());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Scalar& a = at(i, j);
      if (field_.is_zero(a) || field_.is_zero(v[j])) continue;
      out[i] = field_.add(out[i], field_.mul(a, v[j]));
    }
  return out;
}

Mat Mat::unflatten(const std::vector<Scalar>& v, int rows, int cols, Field f) {
  if ((size_t)rows * cols != v.size()) throw InternalError("unflatten shape mismatch");
  Mat m(rows, cols, f);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = v[(size_t)r * cols + c];
  return m;
}

std::vector<int> rref(Mat& m) {
  const Field f = m.field();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!f.is_zero(m.at(i, c))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    Scalar piv_inv = f.inv(m.at(r, c));
    for (int j = c; j < m.cols(); ++j) m.at(r, j) = f.mul(m.at(r, j), piv_inv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m.at(i, c))) continue;
      Scalar factor = m.at(i, c);
      for (int j = c; j < m.cols(); ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(Mat m) { return (int)rref(m).size(); }

std::vector<std::vector<Scalar>> nullspace_basis(Mat m) {
  const Field f = m.field();
  const int n = m.cols();
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    std::vector<Scalar> v(n, f.zero());
    v[j] = f.one();
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = f.neg(m.at((int)k, j));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> in_span(const std::vector<std::vector<Scalar>>& vecs,
                                           const std::vector<Scalar>& target, Field f) {
  const int dim = (int)target.size();
  const int k = (int)vecs.size();
  Mat aug(dim, k + 1, f);
  for (int j = 0; j < k; ++j) {
    if ((int)vecs[j].size() != dim) throw InternalError("in_span dimension mismatch");
    for (int i = 0; i < dim; ++i) aug.at(i, j) = vecs[j][i];
  }
  for (int i = 0; i < dim; ++i) aug.at(i, k) = target[i];
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  std::vector<Scalar> coeffs(k, f.zero());
  for (size_t r = 0; r < pivots.size(); ++r) coeffs[pivots[r]] = aug.at((int)r, k);
  return coeffs;
}

void RowSpace::reduce(std::vector<Scalar>& v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = v[pivots_[r]];
    if (field_.is_zero(c)) continue;
    Scalar factor = c;
    for (size_t j = 0; j < v.size(); ++j)
      v[j] = field_.sub(v[j], field_.mul(factor, rows_[r][j]));
  }
}

bool RowSpace::add(std::vector<Scalar> v) {
  reduce(v);
  int piv = -1;
  for (size_t j = 0; j < v.size(); ++j)
    if (!field_.is_zero(v[j])) {
      piv = (int)j;
      break;
    }
  if (piv < 0) return false;
  Scalar piv_inv = field_.inv(v[piv]);
  for (auto& x : v) x = field_.mul(x, piv_inv);
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = rows_[r][piv];
    if (field_.is_zero(c)) continue;
    for (size_t j = 0; j < v.size(); ++j)
      rows_[r][j] = field_.sub(rows_[r][j], field_.mul(c, v[j]));
  }
  // Keep rows ordered by pivot column so the representation is canonical.
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool RowSpace::contains(std::vector<Scalar> v) const {
  reduce(v);
  for (const Scalar& x : v)
    if (!field_.is_zero(x)) return false;
  return true;
}

std::vector<int> quotient_basis(const std::vector<std::vector<Scalar>>& ambient,
                                const std::vector<std::vector<Scalar>>& sub, Field f) {
  RowSpace whole(f);
  for (const auto& v : ambient) whole.add(v);
  RowSpace acc(f);
  for (const auto& v : sub) {
    if (!whole.contains(v)) throw InternalError("quotient_basis: subspace vector outside ambient span");
    acc.add(v);
  }
  std::vector<int> picked;
  for (size_t i = 0; i < ambient.size(); ++i)
    if (acc.add(ambient[i])) picked.push_back((int)i);
  return picked;
}

}  // namespace sba
