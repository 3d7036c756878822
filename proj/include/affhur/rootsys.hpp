#pragma once

// Crystallographic root systems of finite type, built from tabulated Cartan
// matrices. Roots are integer vectors over the simple roots, coroots integer
// vectors over the simple coroots; the two coordinate systems are never
// mixed except through RootSystem::coroot().
//
// The bilinear form is normalized so that short roots have squared length 2,
// i.e. (alpha_i | alpha_j) = d_i * a_ij with the minimal symmetrizer d.

#include <cstdint>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "affhur/matrix.hpp"

namespace affhur {

// Index into RootSystem::roots(). Positive roots occupy [0, N), their
// negatives [N, 2N) in the same order, so negation is +-N.
struct RootId {
  std::uint32_t value = 0;
  friend auto operator<=>(const RootId&, const RootId&) = default;
};

struct Root {
  IntVector coords;
  friend bool operator==(const Root&, const Root&) = default;
};

struct CorootVector {
  IntVector coords;
  friend bool operator==(const CorootVector&, const CorootVector&) = default;
};

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct CartanType {
  Family family = Family::A;
  int rank = 1;
  std::string name() const;
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

// Parses "A2", "b3", "G2" (case-insensitive). Throws ParseError.
CartanType parse_cartan_type(std::string_view text);

// Tabulated Cartan matrix, entries a_ij = <alpha_j, alpha_i^vee>.
IntMatrix cartan_matrix(const CartanType& type);

class RootSystem {
 public:
  // Throws ParseError for invalid (family, rank) pairs.
  RootSystem(Family family, int rank);
  explicit RootSystem(const CartanType& type) : RootSystem(type.family, type.rank) {}

  const CartanType& type() const { return type_; }
  std::size_t rank() const { return rank_; }
  const IntMatrix& cartan() const { return cartan_; }
  // Gram matrix of the simple roots, (alpha_i | alpha_j).
  const IntMatrix& gram() const { return gram_; }
  const IntVector& symmetrizer() const { return symmetrizer_; }
  std::int64_t ratio_delta() const { return ratio_delta_; }

  std::size_t num_roots() const { return roots_.size(); }
  std::size_t num_positive() const { return roots_.size() / 2; }
  const std::vector<Root>& roots() const { return roots_; }
  const Root& root(RootId id) const { return roots_.at(id.value); }
  const CorootVector& coroot(RootId id) const { return coroots_.at(id.value); }
  RootId simple(std::size_t i) const { return simple_.at(i); }
  RootId highest_root() const { return highest_; }

  bool is_positive(RootId id) const { return id.value < num_positive(); }
  RootId negate(RootId id) const;
  RootId canonical(RootId id) const { return is_positive(id) ? id : negate(id); }
  bool is_long(RootId id) const { return long_[id.value]; }
  std::int64_t norm(RootId id) const { return norm_[id.value]; }

  // Lookup by coordinates; throws DomainError if not a root.
  RootId id_of(const Root& r) const;
  bool contains(const Root& r) const;
  std::optional<RootId> find(const Root& r) const;

  // Coroot of an arbitrary root vector, with integrality checked.
  CorootVector coroot(const Root& alpha) const;

  // (lam | alpha) for lam over the simple coroots and alpha over the simple roots.
  std::int64_t pairing(const CorootVector& lam, const Root& alpha) const;
  std::int64_t pairing(std::span<const std::int64_t> lam, std::span<const std::int64_t> alpha) const;
  // (alpha | beta), both over the simple roots.
  std::int64_t inner(const Root& alpha, const Root& beta) const;
  // <beta, alpha^vee> = 2 (alpha|beta) / (alpha|alpha).
  std::int64_t cartan_integer(RootId beta, RootId alpha) const {
    return cartan_int_[alpha.value * num_roots() + beta.value];
  }

  // s_alpha(beta) = beta - <beta, alpha^vee> alpha.
  Root reflect(const Root& alpha, const Root& beta) const;
  RootId reflect(RootId alpha, RootId beta) const { return reflect_[alpha.value * num_roots() + beta.value]; }

  // Matrices of s_alpha acting on root coordinates and on coroot coordinates.
  IntMatrix reflection_matrix(RootId alpha) const;
  IntMatrix coroot_reflection_matrix(RootId alpha) const;

 private:
  CartanType type_;
  std::size_t rank_ = 0;
  IntMatrix cartan_;
  IntMatrix gram_;
  IntVector symmetrizer_;
  std::int64_t ratio_delta_ = 1;
  std::vector<Root> roots_;
  std::vector<CorootVector> coroots_;
  std::vector<std::int64_t> norm_;
  std::vector<bool> long_;
  std::vector<RootId> simple_;
  RootId highest_;
  std::vector<std::int64_t> cartan_int_;
  std::vector<RootId> reflect_;
  std::unordered_map<std::size_t, std::vector<std::uint32_t>> index_;
};

// Closure of the simple roots under the simple reflections, computed without
// any of the RootSystem tables. Used by the constructor and by tests.
std::vector<IntVector> close_root_set(const IntMatrix& cartan);

// Positive representative: first nonzero coefficient positive.
bool is_positive_vector(std::span<const std::int64_t> v);

}  // namespace affhur
