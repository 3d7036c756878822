#pragma once

// Finite Weyl group elements as integer matrices on simple-root coordinates,
// absolute length, reduced reflection factorizations and the finite
// quasi-Coxeter / parabolic tests.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "affhur/matrix.hpp"
#include "affhur/rootsys.hpp"

namespace affhur {

class FiniteWeylElement {
 public:
  FiniteWeylElement() = default;

  static FiniteWeylElement identity(const RootSystem& rs);
  static FiniteWeylElement reflection(const RootSystem& rs, RootId alpha);
  // Accepts any matrix that permutes the root set; throws DomainError otherwise.
  static FiniteWeylElement from_matrix(const RootSystem& rs, const IntMatrix& m);

  std::size_t rank() const { return m_.rows(); }
  // Action on simple-root coordinates.
  const IntMatrix& matrix() const { return m_; }
  const IntMatrix& inverse_matrix() const { return inv_; }
  // Action on simple-coroot coordinates: D M D^{-1} with D = diag(symmetrizer).
  IntMatrix coroot_matrix() const;

  IntVector act_on_root(std::span<const std::int64_t> c) const { return m_.apply(c); }
  IntVector act_on_coroot(std::span<const std::int64_t> lam) const;
  IntVector inverse_act_on_coroot(std::span<const std::int64_t> lam) const;

  FiniteWeylElement inverse() const;
  std::int64_t determinant() const;
  bool is_identity() const;

  friend FiniteWeylElement operator*(const FiniteWeylElement& a, const FiniteWeylElement& b);
  friend bool operator==(const FiniteWeylElement& a, const FiniteWeylElement& b) { return a.m_ == b.m_; }

  std::size_t hash() const { return hash_range(m_.data()); }

 private:
  IntMatrix m_;
  IntMatrix inv_;
  IntVector sym_;
};

struct FiniteWeylElementHash {
  std::size_t operator()(const FiniteWeylElement& w) const { return w.hash(); }
};

// Ordered factorization into reflections s_beta, entries are positive roots.
using FiniteTuple = std::vector<RootId>;

// Codimension of the fixed space; equals the reflection length.
std::size_t absolute_length(const FiniteWeylElement& w);

// u <=_T v iff l_T(u) + l_T(u^{-1} v) = l_T(v).
bool leq_T(const FiniteWeylElement& u, const FiniteWeylElement& v);

// Cached reflections and the enumeration routines for one root system.
// Holds a non-owning reference; the RootSystem must outlive it.
class FiniteWeylGroup {
 public:
  explicit FiniteWeylGroup(const RootSystem& rs);

  const RootSystem& roots() const { return *rs_; }
  std::size_t rank() const { return rs_->rank(); }

  const FiniteWeylElement& reflection(RootId alpha) const { return refl_.at(rs_->canonical(alpha).value); }
  FiniteWeylElement identity() const { return FiniteWeylElement::identity(*rs_); }
  FiniteWeylElement product(std::span<const RootId> tuple) const;

  // Red_T(w), in canonical root order.
  std::vector<FiniteTuple> reduced_factorizations(const FiniteWeylElement& w) const;

  // All m-tuples of reflections (positive roots) with product w.
  std::vector<FiniteTuple> reflection_sequences(const FiniteWeylElement& w, std::size_t m) const;
  // Same, restricted to first entry `first`.
  std::vector<FiniteTuple> reflection_sequences(const FiniteWeylElement& w, std::size_t m, RootId first) const;

  // All m-tuples of reflections with product w that generate W_0.
  std::vector<FiniteTuple> fac_set(const FiniteWeylElement& w, std::size_t m) const;

  // Every element of W_0, breadth-first from the identity.
  std::vector<FiniteWeylElement> elements() const;

  // Elements of <s_beta : beta in gens>, by closure.
  std::vector<FiniteWeylElement> subgroup(std::span<const RootId> gens) const;

  bool generates_w0(std::span<const RootId> roots) const;
  bool is_parabolic(std::span<const RootId> roots) const;
  bool is_quasi_coxeter(const FiniteWeylElement& w) const;
  bool is_parabolic_quasi_coxeter(const FiniteWeylElement& w) const;

 private:
  void reduced_dfs(const FiniteWeylElement& w, std::size_t len, FiniteTuple& prefix,
                   std::vector<FiniteTuple>& out) const;

  const RootSystem* rs_;
  std::vector<FiniteWeylElement> refl_;  // indexed by positive root
};

// W_0-orbit of a coroot-coordinate vector.
std::vector<IntVector> coroot_orbit(const FiniteWeylGroup& group, const IntVector& lam);

}  // namespace affhur
