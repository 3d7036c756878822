#pragma once

// Exact integer lattices and the linear algebra behind them. Everything that
// can see coefficient growth (Hermite/Smith forms, rational solves) runs on
// GMP integers.

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

#include "affhur/matrix.hpp"
#include "affhur/rootsys.hpp"

namespace affhur {

using BigVector = std::vector<mpz_class>;
using BigMatrix = std::vector<BigVector>;  // row-major list of rows
using RationalVector = std::vector<mpq_class>;

BigVector to_big(std::span<const std::int64_t> v);
IntVector to_int64(const BigVector& v);  // throws DomainError on overflow

// Z-span of a set of vectors, stored as its Hermite normal form: rows in
// echelon order, positive pivots, entries above each pivot reduced into
// [0, pivot). The form is unique, so lattice equality is basis equality.
class IntegerLattice {
 public:
  IntegerLattice() = default;
  static IntegerLattice span(const std::vector<IntVector>& vectors, std::size_t ambient_rank);
  static IntegerLattice span(const BigMatrix& vectors, std::size_t ambient_rank);
  static IntegerLattice full(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const BigMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<IntVector> basis_int64() const;

  bool contains(std::span<const std::int64_t> v) const;
  bool contains(const BigVector& v) const;
  // Coordinates of v over the stored basis, or nullopt if v is not in the lattice.
  std::optional<BigVector> coordinates(const BigVector& v) const;
  // Canonical representative of the coset v + L.
  IntVector reduce(std::span<const std::int64_t> v) const;

  friend bool operator==(const IntegerLattice&, const IntegerLattice&) = default;

 private:
  std::size_t ambient_ = 0;
  BigMatrix basis_;
  std::vector<std::size_t> pivots_;
};

bool lattice_equal(const IntegerLattice& a, const IntegerLattice& b);

struct LatticeIndex {
  bool infinite = false;
  mpz_class value = 1;  // meaningful when !infinite
};

// [sup : sub]. Throws DomainError when sub is not contained in sup.
LatticeIndex index(const IntegerLattice& sub, const IntegerLattice& sup);

// U * A * V = diag(invariants, 0...) with U, V unimodular.
struct SmithForm {
  std::vector<mpz_class> invariants;  // nonzero diagonal entries, each dividing the next
  BigMatrix U;
  BigMatrix V;
};
SmithForm smith_normal_form(const BigMatrix& a, std::size_t cols);

mpz_class big_determinant(const BigMatrix& a);

// Integer solutions of A x = b: particular solution plus a kernel basis.
struct IntegerSolution {
  IntVector particular;
  std::vector<IntVector> kernel;
};
std::optional<IntegerSolution> solve_integer_system(const IntMatrix& a, std::span<const std::int64_t> b);

// Rational solutions of A x = b: a point plus a basis of the null space.
struct AffineSolution {
  RationalVector point;
  std::vector<RationalVector> directions;
};
std::optional<AffineSolution> solve_rational_system(const std::vector<RationalVector>& a, const RationalVector& b);

// |P(Phi)/L(Phi)|, computed from the Smith form of the Cartan matrix.
mpz_class connection_index(const RootSystem& rs);

// W_R(R): orbit of R under the group generated by the reflections in R.
std::vector<RootId> smallest_subsystem(const RootSystem& rs, std::span<const RootId> generators);

// Smallest subset containing R that is closed under its own reflections.
std::vector<RootId> reflection_closure(const RootSystem& rs, std::span<const RootId> generators);

IntegerLattice root_lattice_of(const RootSystem& rs, std::span<const RootId> roots);
IntegerLattice coroot_lattice_of(const RootSystem& rs, std::span<const RootId> roots);

// span({delta * alpha : alpha short} u {alpha : alpha long}), over the simple roots.
IntegerLattice mixed_root_sublattice(const RootSystem& rs);
// span({delta * alpha^vee : alpha long} u {alpha^vee : alpha short}), over the simple coroots.
IntegerLattice mixed_coroot_sublattice(const RootSystem& rs);

}  // namespace affhur
