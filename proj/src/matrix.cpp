#include "gspan/matrix.hpp"

namespace gspan {

IntMatrix::IntMatrix(
    std::initializer_list<std::initializer_list<std::int64_t>> init) {
  rows_ = static_cast<int>(init.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(init.begin()->size());
  a_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& row : init) {
    if (static_cast<int>(row.size()) != cols_)
      throw DimensionMismatchError("ragged matrix initializer");
    for (std::int64_t v : row) a_.push_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_)
    throw DimensionMismatchError("matrix product shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      std::int64_t v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatchError("matrix sum shape mismatch");
  IntMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
  return r;
}

std::vector<std::int64_t> IntMatrix::apply(
    const std::vector<std::int64_t>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw DimensionMismatchError("matrix-vector shape mismatch");
  std::vector<std::int64_t> r(rows_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  for (std::int64_t v : a_)
    if (v != 0) return false;
  return true;
}

std::vector<std::int64_t> solve_upper_triangular_exact(
    const IntMatrix& u, const std::vector<std::int64_t>& b) {
  const int n = u.rows();
  if (u.cols() != n || static_cast<int>(b.size()) != n)
    throw DimensionMismatchError("triangular solve shape mismatch");
  std::vector<std::int64_t> x(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    std::int64_t acc = b[i];
    for (int j = i + 1; j < n; ++j) acc -= u.at(i, j) * x[j];
    const std::int64_t d = u.at(i, i);
    if (d == 0 || acc % d != 0)
      throw ValidationError("triangular solve is not exact over the integers");
    x[i] = acc / d;
  }
  return x;
}

}  // namespace gspan
