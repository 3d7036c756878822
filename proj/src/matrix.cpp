#include "affhur/matrix.hpp"

#include <cstdlib>
#include <numeric>
#include <utility>

#include "affhur/error.hpp"

namespace affhur {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DomainError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::apply(std::span<const std::int64_t> v) const {
  if (v.size() != cols_) throw DomainError("matrix/vector dimension mismatch");
  IntVector out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::int64_t acc = 0;
    const std::int64_t* r = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * v[j];
    out[i] = acc;
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix difference dimension mismatch");
  IntMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
  return c;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "," : "") << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

namespace {

// Bareiss elimination in place; returns the rank and the sign-tracked
// determinant of the leading block (meaningful for square full-rank input).
std::pair<std::size_t, std::int64_t> bareiss(std::vector<std::vector<__int128>>& a, std::size_t cols) {
  const std::size_t rows = a.size();
  __int128 prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return {r, static_cast<std::int64_t>(prev) * sign};
}

std::vector<std::vector<__int128>> widen(const IntMatrix& m) {
  std::vector<std::vector<__int128>> a(m.rows(), std::vector<__int128>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return a;
}

}  // namespace

std::size_t rational_rank(const IntMatrix& m) {
  auto a = widen(m);
  return bareiss(a, m.cols()).first;
}

std::int64_t determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  auto a = widen(m);
  auto [rank, det] = bareiss(a, m.cols());
  return rank < m.rows() ? 0 : det;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DomainError("inverse of non-square matrix");
  // Gauss-Jordan over the integers using unimodular row operations only
  // (Euclid on each column), which stays exact for det = +-1.
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (;;) {
      std::size_t piv = n;
      for (std::size_t i = c; i < n; ++i)
        if (a[i][c] != 0 && (piv == n || std::llabs(a[i][c]) < std::llabs(a[piv][c]))) piv = i;
      if (piv == n) throw DomainError("matrix is singular");
      std::swap(a[piv], a[c]);
      bool done = true;
      for (std::size_t i = c + 1; i < n; ++i) {
        if (a[i][c] == 0) continue;
        const std::int64_t q = a[i][c] / a[c][c];
        for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= q * a[c][j];
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (std::llabs(a[c][c]) != 1) throw DomainError("matrix is not unimodular");
    if (a[c][c] < 0)
      for (auto& x : a[c]) x = -x;
  }
  for (std::size_t c = n; c-- > 0;)
    for (std::size_t i = 0; i < c; ++i) {
      const std::int64_t q = a[i][c];
      if (q == 0) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= q * a[c][j];
    }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a[i][n + j];
  return inv;
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DomainError("vector dimension mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DomainError("vector dimension mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

IntVector operator-(const IntVector& a) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

IntVector operator*(std::int64_t s, const IntVector& a) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

bool is_zero(std::span<const std::int64_t> v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

std::size_t hash_range(std::span<const std::int64_t> v, std::size_t seed) {
  std::size_t h = seed ^ (v.size() * 0x9e3779b97f4a7c15ULL);
  for (auto x : v) {
    std::uint64_t k = static_cast<std::uint64_t>(x) * 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    h ^= k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace affhur
