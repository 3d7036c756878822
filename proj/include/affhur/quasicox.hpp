#pragma once

// Affine reflection tuples: generation of W, quasi-Coxeter detection,
// enumeration of factorizations through integer linear systems, fibers of
// the projection and the constructive Hurwitz connection pipeline.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affhur/hurwitz.hpp"
#include "affhur/intlattice.hpp"
#include "affhur/weyl_aff.hpp"

namespace affhur {

struct QuasiLimits {
  std::int64_t level_bound = 2;
  SearchLimits search{16, 1'000'000};
  std::size_t threads = 1;
  std::size_t length_ceiling = 0;  // 0: twice the finite rank
};

struct GenerationCertificate {
  BraidWord normalizing_braid;
  RationalVector conjugating_coweight;
  std::optional<RootId> repeated_root;
  std::int64_t level_gap = 0;
  bool projected_generates = false;
  IntegerLattice translation_lattice;
};

struct GenerationResult {
  bool generates = false;
  GenerationCertificate certificate;
};

// Decides whether n+1 affine reflections generate W (n = finite rank).
GenerationResult generates_affine(const RootSystem& rs, const AffineTuple& tuple, const SearchLimits& limits = {});

// Capped multiplication closure in (w_0, lambda mod Lambda) coordinates.
// nullopt when the cap is reached. Works for any number of generators.
std::optional<bool> closure_generates(const RootSystem& rs, const AffineTuple& gens, std::size_t max_rounds = 10'000);

struct QuasiCoxeterResult {
  bool verdict = false;
  std::optional<AffineTuple> witness;
  // The verdict covers all levels, not only |k_i| <= level_bound.
  bool conclusive = false;
  // A witness exists but none with |k_i| <= level_bound.
  bool witness_beyond_bound = false;
  std::string note;
};

QuasiCoxeterResult is_quasi_coxeter_affine(const RootSystem& rs, const AffineWeylElement& w,
                                           const QuasiLimits& limits = {});

// All m-tuples (beta_i, k_i) with |k_i| <= K and product target, sorted
// lexicographically on (root coordinates, level).
std::vector<AffineTuple> enumerate_factorizations(const RootSystem& rs, const AffineWeylElement& target,
                                                  std::size_t m, std::int64_t K, std::size_t threads = 1);

// Smallest m with a factorization of length m; throws LimitError above the ceiling.
std::size_t absolute_length_affine(const RootSystem& rs, const AffineWeylElement& w, std::size_t ceiling = 0);

// Shifts (l_n + j, l_{n+1} + j) of the last two levels, |j| <= K, ascending j.
std::vector<AffineTuple> fiber(const RootSystem& rs, const AffineTuple& base, std::int64_t K);

struct ConnectReport {
  std::optional<BraidWord> word;
  bool pipeline = false;       // found by the staged pipeline rather than the fallback search
  std::string failed_stage;    // empty when the pipeline succeeded
  std::array<double, 4> stage_seconds{};  // normalize, align, fiber, fallback
  bool limits_hit = false;
};

// Throws DomainError unless both tuples multiply to w.
ConnectReport connect_reduced(const RootSystem& rs, const AffineWeylElement& w, const AffineTuple& t1,
                              const AffineTuple& t2, const SearchLimits& limits = {16, 1'000'000});

bool is_parabolic_quasi_coxeter_affine(const RootSystem& rs, const AffineWeylElement& w,
                                       const QuasiLimits& limits = {});

// Lexicographic order on (root coordinates, level), entrywise.
bool tuple_less(const RootSystem& rs, const AffineTuple& a, const AffineTuple& b);

}  // namespace affhur
