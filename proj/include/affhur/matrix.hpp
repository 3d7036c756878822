#pragma once

// Small dense integer matrices. Weyl group matrices in simple-root
// coordinates have tiny entries, so plain int64 arithmetic suffices here;
// lattice code that can see coefficient growth uses GMP instead.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

namespace affhur {

using IntVector = std::vector<std::int64_t>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const std::int64_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<std::int64_t>& data() const { return data_; }

  IntMatrix transpose() const;
  IntVector apply(std::span<const std::int64_t> v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// Rank over the rationals (fraction-free elimination).
std::size_t rational_rank(const IntMatrix& m);

// Determinant via Bareiss elimination; square input only.
std::int64_t determinant(const IntMatrix& m);

// Exact inverse of a unimodular matrix (det = +-1). Throws DomainError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a);
IntVector operator*(std::int64_t s, const IntVector& a);
bool is_zero(std::span<const std::int64_t> v);

std::size_t hash_range(std::span<const std::int64_t> v, std::size_t seed = 0);

}  // namespace affhur
