#pragma once

// Affine Weyl group elements in the normal form w = w_0 tr(lambda), with the
// translation on the right and lambda over the simple coroots. An affine
// reflection s_{alpha,k} is the pair (s_alpha, -k alpha^vee).

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "affhur/intlattice.hpp"
#include "affhur/rootsys.hpp"
#include "affhur/weyl_fin.hpp"

namespace affhur {

// s_{alpha,k} with alpha a positive root; s_{-alpha,-k} is stored as s_{alpha,k}.
struct AffineReflection {
  RootId root;
  std::int64_t level = 0;
  friend auto operator<=>(const AffineReflection&, const AffineReflection&) = default;
};

AffineReflection make_reflection(const RootSystem& rs, RootId alpha, std::int64_t level);

class AffineWeylElement {
 public:
  AffineWeylElement() = default;
  AffineWeylElement(FiniteWeylElement finite, IntVector translation);

  static AffineWeylElement identity(const RootSystem& rs);
  static AffineWeylElement translation(const RootSystem& rs, IntVector lam);
  static AffineWeylElement reflection(const RootSystem& rs, const AffineReflection& r);

  const FiniteWeylElement& finite_part() const { return finite_; }
  const IntVector& translation() const { return lambda_; }

  AffineWeylElement inverse() const;
  bool is_identity() const { return finite_.is_identity() && is_zero(lambda_); }
  bool is_translation() const { return finite_.is_identity(); }

  // Image of a point given over the simple coroots.
  IntVector act_on_coroot(std::span<const std::int64_t> v) const;

  friend AffineWeylElement operator*(const AffineWeylElement& x, const AffineWeylElement& y);
  friend bool operator==(const AffineWeylElement& x, const AffineWeylElement& y) {
    return x.finite_ == y.finite_ && x.lambda_ == y.lambda_;
  }
  std::size_t hash() const { return hash_range(lambda_, finite_.hash()); }

 private:
  FiniteWeylElement finite_;
  IntVector lambda_;
};

struct AffineWeylElementHash {
  std::size_t operator()(const AffineWeylElement& w) const { return w.hash(); }
};

using AffineTuple = std::vector<AffineReflection>;

inline AffineWeylElement aff_multiply(const AffineWeylElement& x, const AffineWeylElement& y) { return x * y; }

// s_{alpha,k} s_{beta,l} s_{alpha,k} = s_{s_alpha(beta), l - k <beta, alpha^vee>}.
AffineReflection aff_conjugate_reflection(const RootSystem& rs, const AffineReflection& a,
                                          const AffineReflection& b);

// Finite part s_{beta_1}...s_{beta_m} and translation
// sum_i -k_i s_{beta_m}...s_{beta_{i+1}}(beta_i)^vee. Throws InternalError if
// the closed form disagrees with iterated multiplication.
std::pair<FiniteWeylElement, IntVector> translation_part_of_product(const RootSystem& rs,
                                                                     std::span<const AffineReflection> refs);

// Plain iterated product, no cross-check.
AffineWeylElement product(const RootSystem& rs, std::span<const AffineReflection> refs);

inline const FiniteWeylElement& project_p(const AffineWeylElement& x) { return x.finite_part(); }

// tr(lam) s_{alpha,k} tr(-lam) for a coweight lam over the simple coroots.
// Throws DomainError if (lam | alpha) is not integral for every root.
AffineReflection coweight_conjugate(const RootSystem& rs, const RationalVector& lam, const AffineReflection& r);

std::optional<AffineReflection> recognize_reflection(const RootSystem& rs, const AffineWeylElement& x);

// Common fixed points {v : (v | beta_i) = k_i}, v over the simple coroots.
std::optional<AffineSolution> fixed_affine_subspace(const RootSystem& rs, std::span<const AffineReflection> gens);

}  // namespace affhur
