#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pqc/rational.hpp"

namespace pqc {

using VecQ = std::vector<Rat>;

inline VecQ vec_zero(std::size_t n) { return VecQ(n, Rat(0)); }

inline VecQ vec_basis(std::size_t n, std::size_t i) {
  VecQ v(n, Rat(0));
  v[i] = 1;
  return v;
}

inline VecQ& operator+=(VecQ& a, const VecQ& b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline VecQ operator+(VecQ a, const VecQ& b) { return a += b; }

inline VecQ& operator-=(VecQ& a, const VecQ& b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline VecQ operator-(VecQ a, const VecQ& b) { return a -= b; }

inline VecQ operator*(const Rat& c, VecQ v) {
  for (auto& x : v) x *= c;
  return v;
}

inline bool vec_is_zero(const VecQ& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

/// Dense exact-rational matrix.
class MatQ {
 public:
  MatQ() = default;
  MatQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, Rat(0)) {}

  static MatQ identity(std::size_t n) {
    MatQ m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }

  bool operator==(const MatQ& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_; }
  bool operator!=(const MatQ& o) const { return !(*this == o); }

  MatQ& operator+=(const MatQ& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
    return *this;
  }
  MatQ& operator-=(const MatQ& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (std::size_t i = 0; i < d_.size(); ++i) d_[i] -= o.d_[i];
    return *this;
  }
  friend MatQ operator+(MatQ a, const MatQ& b) { return a += b; }
  friend MatQ operator-(MatQ a, const MatQ& b) { return a -= b; }

  friend MatQ operator*(const Rat& c, MatQ m) {
    for (auto& x : m.d_) x *= c;
    return m;
  }

  friend MatQ operator*(const MatQ& a, const MatQ& b) {
    assert(a.cols_ == b.rows_);
    MatQ r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rat& aik = a.at(i, k);
        if (pqc::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
      }
    return r;
  }

  /// Matrix acting on a column vector.
  VecQ apply(const VecQ& v) const {
    assert(v.size() == cols_);
    VecQ r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!pqc::is_zero(at(i, j))) r[i] += at(i, j) * v[j];
    return r;
  }

  MatQ transposed() const {
    MatQ r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  MatQ operator-() const {
    MatQ r = *this;
    for (auto& x : r.d_) x = -x;
    return r;
  }

  bool is_zero() const {
    for (const auto& x : d_)
      if (!pqc::is_zero(x)) return false;
    return true;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  bool is_antisymmetric() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (at(i, j) != -at(j, i)) return false;
    return true;
  }

  /// Gauss-Jordan inverse; std::nullopt when singular.
  std::optional<MatQ> inverse() const {
    assert(rows_ == cols_);
    const std::size_t n = rows_;
    MatQ a = *this;
    MatQ inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && pqc::is_zero(a.at(piv, col))) ++piv;
      if (piv == n) return std::nullopt;
      if (piv != col) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a.at(piv, j), a.at(col, j));
          std::swap(inv.at(piv, j), inv.at(col, j));
        }
      }
      const Rat p = a.at(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(col, j) /= p;
        inv.at(col, j) /= p;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == col || pqc::is_zero(a.at(i, col))) continue;
        const Rat f = a.at(i, col);
        for (std::size_t j = 0; j < n; ++j) {
          a.at(i, j) -= f * a.at(col, j);
          inv.at(i, j) -= f * inv.at(col, j);
        }
      }
    }
    return inv;
  }

  Rat determinant() const {
    assert(rows_ == cols_);
    const std::size_t n = rows_;
    MatQ a = *this;
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && pqc::is_zero(a.at(piv, col))) ++piv;
      if (piv == n) return Rat(0);
      if (piv != col) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
        det = -det;
      }
      det *= a.at(col, col);
      for (std::size_t i = col + 1; i < n; ++i) {
        if (pqc::is_zero(a.at(i, col))) continue;
        const Rat f = a.at(i, col) / a.at(col, col);
        for (std::size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
      }
    }
    return det;
  }

  /// Signature (p, q) of a symmetric matrix via exact congruence diagonalization.
  std::pair<int, int> signature() const {
    assert(rows_ == cols_ && is_symmetric());
    const std::size_t n = rows_;
    MatQ a = *this;
    int pos = 0, neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (pqc::is_zero(a.at(k, k))) {
        // bring a nonzero entry onto the diagonal by a congruence row+col add
        std::size_t j = k + 1;
        while (j < n && pqc::is_zero(a.at(k, j))) ++j;
        if (j == n) continue;  // row is zero in the remaining block
        for (std::size_t c = 0; c < n; ++c) a.at(k, c) += a.at(j, c);
        for (std::size_t r = 0; r < n; ++r) a.at(r, k) += a.at(r, j);
        if (pqc::is_zero(a.at(k, k))) {
          // 2a_kj cancelled against a_jj; subtracting twice flips the sign instead
          for (std::size_t c = 0; c < n; ++c) a.at(k, c) -= 2 * a.at(j, c);
          for (std::size_t r = 0; r < n; ++r) a.at(r, k) -= 2 * a.at(r, j);
        }
      }
      const Rat p = a.at(k, k);
      if (pqc::is_zero(p)) continue;
      if (sgn(p) > 0) ++pos; else ++neg;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (pqc::is_zero(a.at(i, k))) continue;
        const Rat f = a.at(i, k) / p;
        for (std::size_t c = 0; c < n; ++c) a.at(i, c) -= f * a.at(k, c);
        for (std::size_t r = 0; r < n; ++r) a.at(r, i) -= f * a.at(r, k);
      }
    }
    return {pos, neg};
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> d_;
};

/// Solves A x = b exactly. Returns nullopt when inconsistent. `unique` reports
/// whether the solution space is a single point.
inline std::optional<VecQ> solve_linear(MatQ a, VecQ b, bool* unique = nullptr) {
  const std::size_t m = a.rows(), n = a.cols();
  assert(b.size() == m);
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && is_zero(a.at(piv, col))) ++piv;
    if (piv == m) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(row, j));
      std::swap(b[piv], b[row]);
    }
    const Rat p = a.at(row, col);
    for (std::size_t j = 0; j < n; ++j) a.at(row, j) /= p;
    b[row] /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || is_zero(a.at(i, col))) continue;
      const Rat f = a.at(i, col);
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) -= f * a.at(row, j);
      b[i] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (!is_zero(b[i])) return std::nullopt;
  if (unique) *unique = (pivot_col.size() == n);
  VecQ x(n, Rat(0));
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = b[r];
  return x;
}

}  // namespace pqc
