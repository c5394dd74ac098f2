#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "forge/cyclotomic.hpp"

namespace forge {

using CycVector = std::vector<CycNum>;

// Dense matrix over Q(zeta_N).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  static Matrix identity(int n);
  static Matrix diagonal(const CycVector& d);
  static Matrix from_rows(const std::vector<CycVector>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  CycNum& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const CycNum& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  CycVector row(int r) const;
  CycVector col(int c) const;
  CycVector apply(const CycVector& v) const;          // M v
  CycVector apply_row(const CycVector& v) const;      // v M

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  Matrix scaled(const CycNum& c) const;
  Matrix transpose() const;
  Matrix inverse() const;  // throws std::domain_error when singular
  int rank() const;
  CycNum trace() const;
  bool is_zero() const;
  // Basis of {x : M x = 0}.
  std::vector<CycVector> nullspace() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
  friend bool operator<(const Matrix& a, const Matrix& b);
  std::string to_string() const;
  std::size_t hash() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<CycNum> a_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

CycNum dot(const CycVector& a, const CycVector& b);

}  // namespace forge
