#include "forge/matrix.hpp"

#include <stdexcept>

namespace forge {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = CycNum(1);
  return m;
}

Matrix Matrix::diagonal(const CycVector& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<CycVector>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows_; ++r) {
    if (static_cast<int>(rows[r].size()) != m.cols_) throw std::invalid_argument("ragged matrix rows");
    for (int c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

CycVector Matrix::row(int r) const {
  CycVector v(cols_);
  for (int c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
  return v;
}

CycVector Matrix::col(int c) const {
  CycVector v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

CycVector Matrix::apply(const CycVector& v) const {
  CycVector out(rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
  return out;
}

CycVector Matrix::apply_row(const CycVector& v) const {
  CycVector out(cols_);
  for (int c = 0; c < cols_; ++c)
    for (int r = 0; r < rows_; ++r)
      if (!(*this)(r, c).is_zero() && !v[r].is_zero()) out[c] += v[r] * (*this)(r, c);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix m(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const CycNum& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  Matrix m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(CycNum(-1)); }

Matrix Matrix::scaled(const CycNum& c) const {
  Matrix m = *this;
  for (auto& x : m.a_) x = x * c;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(std::vector<CycVector>& m, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    CycNum inv = m[row][c].inverse();
    for (auto& x : m[row]) x = x * inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      CycNum f = m[r][c];
      for (std::size_t j = 0; j < m[r].size(); ++j)
        if (!m[row][j].is_zero()) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  std::vector<CycVector> m(rows_, CycVector(2 * cols_));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m[r][c] = (*this)(r, c);
    m[r][cols_ + r] = CycNum(1);
  }
  auto piv = rref(m, cols_);
  if (static_cast<int>(piv.size()) != rows_) throw std::domain_error("singular matrix");
  Matrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(r, c) = m[r][cols_ + c];
  return out;
}

int Matrix::rank() const {
  std::vector<CycVector> m(rows_);
  for (int r = 0; r < rows_; ++r) m[r] = row(r);
  return static_cast<int>(rref(m, cols_).size());
}

CycNum Matrix::trace() const {
  CycNum t;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<CycVector> Matrix::nullspace() const {
  std::vector<CycVector> m(rows_);
  for (int r = 0; r < rows_; ++r) m[r] = row(r);
  auto piv = rref(m, cols_);
  std::vector<bool> is_piv(cols_, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<CycVector> basis;
  for (int f = 0; f < cols_; ++f) {
    if (is_piv[f]) continue;
    CycVector v(cols_);
    v[f] = CycNum(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool operator<(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    if (a.a_[i] != b.a_[i]) return a.a_[i] < b.a_[i];
  return false;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (int r = 0; r < rows_; ++r) {
    s += r ? ", [" : "[";
    for (int c = 0; c < cols_; ++c) s += (c ? ", " : "") + (*this)(r, c).to_string();
    s += "]";
  }
  return s + "]";
}

std::size_t Matrix::hash() const {
  std::size_t h = static_cast<std::size_t>(rows_ * 31 + cols_);
  for (const auto& x : a_) h = h * 1000003u ^ x.hash();
  return h;
}

CycNum dot(const CycVector& a, const CycVector& b) {
  CycNum s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

}  // namespace forge
