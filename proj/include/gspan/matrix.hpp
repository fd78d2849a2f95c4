#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "gspan/errors.hpp"

namespace gspan {

// Dense integer matrix. Everything in this library is exact arithmetic on
// free abelian groups, so the scalar type is int64 and overflow is a bug.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init);

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::int64_t& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  std::int64_t at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  bool operator==(const IntMatrix& o) const = default;

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const;

  bool is_identity() const;
  bool is_zero() const;

 private:
  int rows_, cols_;
  std::vector<std::int64_t> a_;
};

// Solves U x = b for an upper-triangular U with nonzero diagonal, requiring
// every division to be exact. Used to invert ghost (mark) coordinates.
std::vector<std::int64_t> solve_upper_triangular_exact(
    const IntMatrix& u, const std::vector<std::int64_t>& b);

}  // namespace gspan
