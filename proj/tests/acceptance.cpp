// One PASS/FAIL line per acceptance criterion. Exact integer checks, so the
// only tolerances are the wall-clock limits below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "affhur/intlattice.hpp"
#include "affhur/quasicox.hpp"
#include "oracles.hpp"

using namespace affhur;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::vector<RootId> subset(const std::vector<RootId>& pool, std::uint32_t mask) {
  std::vector<RootId> r;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (mask >> i & 1) r.push_back(pool[i]);
  return r;
}

std::size_t closure_size(const RootSystem& rs, const std::vector<RootId>& gens) {
  std::vector<IntMatrix> g;
  for (auto x : gens) g.push_back(rs.reflection_matrix(x));
  std::set<std::vector<std::int64_t>> seen{IntMatrix::identity(rs.rank()).data()};
  std::vector<IntMatrix> q{IntMatrix::identity(rs.rank())};
  for (std::size_t k = 0; k < q.size(); ++k)
    for (const auto& s : g) {
      IntMatrix y = q[k] * s;
      if (seen.insert(y.data()).second) q.push_back(std::move(y));
    }
  return seen.size();
}

// All m-tuples of positive roots with product w.
std::set<FiniteTuple> brute_sequences(const FiniteWeylGroup& g, const FiniteWeylElement& w, std::size_t m) {
  const auto pos = oracle::positive(g.roots());
  std::set<FiniteTuple> out;
  std::vector<std::size_t> idx(m, 0);
  for (;;) {
    FiniteTuple t;
    for (auto i : idx) t.push_back(pos[i]);
    if (g.product(t) == w) out.insert(t);
    std::size_t j = 0;
    while (j < m && ++idx[j] == pos.size()) idx[j++] = 0;
    if (j == m) return out;
  }
}

// Reflections of <gens> with |level| <= L, by conjugation closure.
std::set<AffineReflection> reflections_upto(const RootSystem& rs, const AffineTuple& gens, std::int64_t L) {
  std::set<AffineReflection> seen(gens.begin(), gens.end());
  std::vector<AffineReflection> q(gens.begin(), gens.end());
  for (std::size_t k = 0; k < q.size(); ++k)
    for (const auto& g : gens) {
      const auto x = aff_conjugate_reflection(rs, g, q[k]);
      if (std::abs(x.level) > L) continue;
      if (seen.insert(x).second) q.push_back(x);
    }
  return seen;
}

AffineTuple affine_simple(const RootSystem& rs) {
  AffineTuple g;
  for (std::size_t i = 0; i < rs.rank(); ++i) g.push_back({rs.simple(i), 0});
  g.push_back({rs.highest_root(), 1});
  return g;
}

// ---------------------------------------------------------------------------

std::string worked_example() {
  const RootSystem rs(Family::A, 2);
  const RootId a1 = rs.simple(0), a2 = rs.simple(1), h = rs.highest_root();
  const AffineTuple cox{{a1, 0}, {a2, 0}, {h, 1}};
  AffineTuple sq = cox;
  sq.insert(sq.end(), cox.begin(), cox.end());
  const auto w = product(rs, sq);
  const AffineTuple displayed{{h, 1}, {h, 0}, {a2, 1}, {a2, 0}};
  const AffineTuple mirrored{{a1, 0}, {a1, 1}, {h, 0}, {h, 1}};
  const AffineTuple first{{h, 0}, {a2, 1}, {a2, 0}, {h, 1}};

  // (a) pure translation; the displayed tuple gives the (1, 2) pattern over the simple coroots.
  need(w.is_translation(), "w is not a translation");
  need(oracle::affine_matrix(w) == oracle::affine_matrix(rs, sq), "normal form disagrees with matrices");
  need(w.translation() == IntVector{-2, -1}, "w translation");
  const auto pd = product(rs, displayed);
  need(pd.is_translation() && pd.translation() == IntVector{1, 2}, "displayed product is not tr(1,2)");
  need(product(rs, first) == w && product(rs, mirrored) == w, "first/mirrored decompositions");

  // (b) length 4: even determinant excludes 3, no solvable length-2 system.
  need(w.finite_part().determinant() == 1, "parity");
  need(enumerate_factorizations(rs, w, 2, 40).empty(), "length-2 factorization found");
  need(absolute_length_affine(rs, w) == 4, "absolute length of w");
  need(absolute_length_affine(rs, pd) == 4, "absolute length of the displayed product");

  // (c) enumeration at K = 2.
  const auto own = enumerate_factorizations(rs, pd, 4, 2);
  need(std::find(own.begin(), own.end(), displayed) != own.end(), "displayed tuple not enumerated");
  const auto facs = enumerate_factorizations(rs, w, 4, 2);
  need(std::find(facs.begin(), facs.end(), mirrored) != facs.end(), "mirrored tuple not enumerated");
  need(std::find(facs.begin(), facs.end(), first) != facs.end(), "first decomposition not enumerated");

  // (d) the three chains, each ending with sigma_2 sigma_1 sigma_3 sigma_2.
  const FiniteReflectionPolicy fin{&rs};
  const std::vector<std::vector<FiniteTuple>> chains{
      {{a1, a1, a2, a2}, {a2, a2, a1, a1}},
      {{a1, a1, a2, a2}, {a2, a1, a1, a2}, {a2, a2, h, h}, {h, h, a2, a2}},
      {{a1, a1, a2, a2}, {a1, a2, a2, a1}, {h, h, a1, a1}, {a1, a1, h, h}}};
  for (const auto& chain : chains) {
    need(apply_braid(fin, chain[chain.size() - 2], {2, 1, 3, 2}) == chain.back(), "sigma_2 sigma_1 sigma_3 sigma_2");
    for (std::size_t i = 0; i + 2 < chain.size(); ++i) {
      const auto word = connect(fin, chain[i], chain[i + 1], {8, 100000});
      need(word && apply_braid(fin, chain[i], *word) == chain[i + 1], "chain step");
    }
  }
  const auto rep = connect_reduced(rs, w, first, mirrored);
  need(rep.word && apply_braid(AffineReflectionPolicy{&rs}, first, *rep.word) == mirrored, "connect first->mirrored");
  return std::to_string(facs.size()) + " factorizations of w at K=2";
}

std::string closed_forms() {
  std::size_t conj = 0, fac = 0;
  for (const auto& t : {CartanType{Family::B, 2}, CartanType{Family::G, 2}}) {
    const RootSystem rs(t);
    std::vector<AffineReflection> refl;
    std::vector<IntMatrix> mats;
    for (auto a : oracle::all(rs))
      for (std::int64_t k = -3; k <= 3; ++k) {
        refl.push_back(make_reflection(rs, a, k));
        mats.push_back(oracle::affine_reflection_matrix(rs, a, k));
      }
    for (std::size_t i = 0; i < refl.size(); ++i)
      for (std::size_t j = 0; j < refl.size(); ++j) {
        const auto c = aff_conjugate_reflection(rs, refl[i], refl[j]);
        need(oracle::affine_reflection_matrix(rs, c.root, c.level) == mats[i] * mats[j] * mats[i], "conjugation");
        ++conj;
        const AffineTuple pair{refl[i], refl[j]};
        const auto [f, lam] = translation_part_of_product(rs, pair);
        need(oracle::affine_matrix(AffineWeylElement(f, lam)) == mats[i] * mats[j], "two-term translation");
        ++fac;
      }
    if (t.family == Family::B) {
      for (std::size_t i = 0; i < refl.size(); ++i)
        for (std::size_t j = 0; j < refl.size(); ++j) {
          const IntMatrix mij = mats[i] * mats[j];
          for (std::size_t k = 0; k < refl.size(); ++k) {
            const AffineTuple tri{refl[i], refl[j], refl[k]};
            const auto [f, lam] = translation_part_of_product(rs, tri);
            need(oracle::affine_matrix(AffineWeylElement(f, lam)) == mij * mats[k], "three-term translation");
            ++fac;
          }
        }
    }
  }
  return std::to_string(conj) + " conjugations, " + std::to_string(fac) + " products";
}

std::string generation_criteria() {
  std::size_t scanned = 0, generating = 0, random_cases = 0;
  for (const auto& t : {CartanType{Family::C, 2}, CartanType{Family::G, 2}}) {
    const RootSystem rs(t);
    const auto pos = oracle::positive(rs);
    for (auto b : pos)
      for (auto g : pos)
        oracle::for_each_levels(3, 2, [&](const IntVector& l) {
          const AffineTuple tup{{b, l[0]}, {g, l[1]}, {g, l[2]}};
          ++scanned;
          if (!generates_affine(rs, tup).generates) return;
          ++generating;
          need(rs.is_long(g), "generating tuple with a short repeated root");
          need(std::abs(l[1] - l[2]) == 1, "generating tuple with level gap " + std::to_string(l[1] - l[2]));
        });
    // Lattice criterion against two closure computations on pseudo-random tuples.
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&](std::uint64_t mod) {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return state % mod;
    };
    const auto simple = affine_simple(rs);
    for (int s = 0; s < 200; ++s) {
      AffineTuple tup(3);
      for (auto& r : tup) r = {pos[next(pos.size())], static_cast<std::int64_t>(next(5)) - 2};
      if (s % 2 == 0) tup[2] = {tup[1].root, tup[1].level + (s % 4 == 0 ? 1 : -1)};
      const bool gen = generates_affine(rs, tup).generates;
      const auto closure = closure_generates(rs, tup);
      need(closure.has_value(), "closure oracle hit its cap");
      need(*closure == gen, "lattice criterion disagrees with the closure oracle");
      const auto refl = reflections_upto(rs, tup, 12);
      bool all = true;
      for (const auto& x : simple) all &= refl.contains(x);
      need(all == gen, "lattice criterion disagrees with the reflection closure");
      ++random_cases;
    }
  }
  return std::to_string(scanned) + " normalized tuples (" + std::to_string(generating) + " generating), " +
         std::to_string(random_cases) + " random";
}

std::string finite_transitivity() {
  std::size_t red_elements = 0, fac_elements = 0;
  for (const auto& t : {CartanType{Family::A, 2}, CartanType{Family::B, 2}, CartanType{Family::A, 3}}) {
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    const FiniteReflectionPolicy p{&rs};
    const std::size_t n = rs.rank();
    const auto elems = g.elements();
    const std::size_t order = elems.size();
    for (const auto& w : elems) {
      const std::size_t len = absolute_length(w);
      if (len == n && g.is_quasi_coxeter(w)) {
        const auto all = brute_sequences(g, w, n);
        const auto o = orbit(p, *all.begin(), {64, 1000000});
        need(o.exhausted, "Red_T orbit not exhausted");
        need(std::set<FiniteTuple>(o.tuples.begin(), o.tuples.end()) == all, "Red_T is not a single orbit");
        ++red_elements;
      }
      if (len + 1 == n && g.is_parabolic_quasi_coxeter(w)) {
        std::set<FiniteTuple> fac;
        for (const auto& s : brute_sequences(g, w, n + 1))
          if (closure_size(rs, s) == order) fac.insert(s);
        need(!fac.empty(), "empty Fac set");
        const auto o = orbit(p, *fac.begin(), {64, 1000000});
        need(o.exhausted, "Fac orbit not exhausted");
        need(std::set<FiniteTuple>(o.tuples.begin(), o.tuples.end()) == fac, "Fac is not a single orbit");
        ++fac_elements;
      }
    }
  }
  return std::to_string(red_elements) + " quasi-Coxeter elements, " + std::to_string(fac_elements) +
         " parabolic quasi-Coxeter elements of corank one";
}

struct Sample {
  AffineWeylElement w;
  std::int64_t K;
  std::vector<AffineTuple> facs;
};

// Three quasi-Coxeter elements: the Coxeter element, then products of
// generating tuples in scan order. Each is sampled at the smallest K >= 2
// giving at least 50 factorizations (K = 2 tops out below 50 in A2 and C2).
std::vector<Sample> main_theorem_elements(const RootSystem& rs) {
  std::vector<Sample> out;
  std::set<std::pair<std::vector<std::int64_t>, IntVector>> seen;
  auto consider = [&](const AffineWeylElement& w) {
    if (!seen.insert({w.finite_part().matrix().data(), w.translation()}).second) return;
    if (absolute_length_affine(rs, w) != rs.rank() + 1) return;
    if (!is_quasi_coxeter_affine(rs, w).verdict) return;
    for (std::int64_t K = 2; K <= 6; ++K) {
      auto facs = enumerate_factorizations(rs, w, rs.rank() + 1, K);
      if (facs.size() >= 50) {
        out.push_back({w, K, std::move(facs)});
        return;
      }
    }
  };
  consider(product(rs, affine_simple(rs)));
  const auto pos = oracle::positive(rs);
  for (auto a : pos)
    for (auto b : pos)
      for (auto c : pos)
        oracle::for_each_levels(3, 1, [&](const IntVector& l) {
          if (out.size() >= 3) return;
          const AffineTuple tup{{a, l[0]}, {b, l[1]}, {c, l[2]}};
          if (generates_affine(rs, tup).generates) consider(product(rs, tup));
        });
  return out;
}

std::string main_theorem(const CartanType& t) {
  const RootSystem rs(t);
  const AffineReflectionPolicy p{&rs};
  const FiniteWeylGroup g(rs);
  const auto samples = main_theorem_elements(rs);
  need(samples.size() >= 3, "fewer than three sampled elements");
  std::size_t pairs = 0;
  std::string ks;
  for (const auto& [w, K, facs] : samples) {
    ks += (ks.empty() ? "" : "/") + std::to_string(facs.size()) + "@K=" + std::to_string(K);
    for (const auto& f : facs) need(g.generates_w0(project_tuple(f)), "projection does not generate");
    for (const auto& a : facs)
      for (const auto& b : facs) {
        const auto rep = connect_reduced(rs, w, a, b);
        need(rep.word.has_value(), "pair not connected");
        need(rep.pipeline && rep.failed_stage.empty(), "pipeline stage " + rep.failed_stage + " failed");
        need(apply_braid(p, a, *rep.word) == b, "braid word does not verify");
        ++pairs;
      }
  }
  return "tuples " + ks + ", " + std::to_string(pairs) + " pairs";
}

std::string lattice_lemmas() {
  std::size_t checks = 0;
  for (const auto& t : {CartanType{Family::B, 2}, CartanType{Family::B, 3}, CartanType{Family::C, 3},
                        CartanType{Family::F, 4}, CartanType{Family::G, 2}}) {
    const RootSystem rs(t);
    const auto lr = mixed_root_sublattice(rs);
    const auto lc = mixed_coroot_sublattice(rs);
    for (auto a : oracle::all(rs)) {
      if (!rs.is_long(a)) need(!lr.contains(rs.root(a).coords), t.name() + ": short root in the mixed sublattice");
      if (rs.is_long(a)) need(!lc.contains(rs.coroot(a).coords), t.name() + ": short coroot in the dual sublattice");
      checks += 2;
    }
    if (t == CartanType{Family::B, 3}) continue;
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      const auto s = rs.reflection_matrix(rs.simple(i));
      const auto sv = rs.coroot_reflection_matrix(rs.simple(i));
      for (const auto& v : lr.basis_int64()) need(lr.contains(s.apply(v)), t.name() + ": not stable");
      for (const auto& v : lc.basis_int64()) need(lc.contains(sv.apply(v)), t.name() + ": dual not stable");
      ++checks;
    }
  }
  const std::map<std::string, long> expected{{"A1", 2}, {"A2", 3}, {"B2", 2}, {"G2", 1}};
  for (const auto& [name, idx] : expected) {
    const RootSystem rs(parse_cartan_type(name));
    need(connection_index(rs) == idx, "connection index of " + name);
    // Smith invariants of the Cartan matrix multiply to the same number.
    BigMatrix a;
    for (std::size_t i = 0; i < rs.rank(); ++i) a.push_back(to_big(rs.cartan().row(i)));
    mpz_class prod = 1;
    for (const auto& d : smith_normal_form(a, rs.rank()).invariants) prod *= d;
    need(prod == idx, "Smith invariants of " + name);
  }
  return std::to_string(checks) + " memberships/stability checks, 4 connection indices";
}

std::string subsystem_equivalence() {
  std::size_t pairs = 0;
  for (const auto& t : {CartanType{Family::A, 3}, CartanType{Family::G, 2}}) {
    const RootSystem rs(t);
    const auto pos = oracle::positive(rs);
    const std::uint32_t top = 1u << pos.size();
    std::vector<std::set<IntVector>> subsystems;
    for (std::uint32_t mask = 1; mask < top; ++mask) {
      std::set<IntVector> s;
      for (auto x : subset(pos, mask)) {
        s.insert(rs.root(x).coords);
        s.insert(-rs.root(x).coords);
      }
      bool closed = true;
      for (const auto& a : s)
        for (const auto& b : s) closed = closed && s.contains(oracle::reflect(rs, a, b));
      if (closed) subsystems.push_back(std::move(s));
    }
    for (std::uint32_t mask = 1; mask < top; ++mask) {
      const auto r = subset(pos, mask);
      std::set<IntVector> wr;
      for (auto x : smallest_subsystem(rs, r)) wr.insert(rs.root(x).coords);
      std::vector<IntVector> rr, rv;
      for (auto x : r) {
        rr.push_back(rs.root(x).coords);
        rv.push_back(rs.coroot(x).coords);
      }
      const auto lr = IntegerLattice::span(rr, rs.rank());
      const auto lv = IntegerLattice::span(rv, rs.rank());
      for (const auto& sub : subsystems) {
        if (!std::all_of(rr.begin(), rr.end(), [&](const IntVector& v) { return sub.contains(v); })) continue;
        std::vector<IntVector> sr(sub.begin(), sub.end()), sv;
        for (const auto& v : sub) sv.push_back(rs.coroot(Root{v}).coords);
        const bool b = sub == wr;
        const bool d = IntegerLattice::span(sr, rs.rank()) == lr && IntegerLattice::span(sv, rs.rank()) == lv;
        need(b == d, t.name() + ": equivalence fails");
        ++pairs;
      }
    }
  }
  return std::to_string(pairs) + " (R, subsystem) pairs";
}

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 worked example in affine A2", 10, worked_example},
      {"2 closed forms vs matrices, B2 and G2, levels -3..3", 30, closed_forms},
      {"3 generation criteria, affine C2 and G2", 120, generation_criteria},
      {"4 finite Hurwitz transitivity, A2 B2 A3", 120, finite_transitivity},
      {"5a main theorem, affine A2", 300, [] { return main_theorem({Family::A, 2}); }},
      {"5b main theorem, affine C2", 300, [] { return main_theorem({Family::C, 2}); }},
      {"5c main theorem, affine G2", 300, [] { return main_theorem({Family::G, 2}); }},
      {"6 lattice lemmas and connection indices", 10, lattice_lemmas},
      {"7 subsystem/lattice equivalence, A3 and G2", 60, subsystem_equivalence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs > c.limit_seconds) {
      ok = false;
      detail += "; over the time limit";
    }
    failed += !ok;
    std::printf("%s  %-52s %8.2fs / %4.0fs  %s\n", ok ? "PASS" : "FAIL", c.name.c_str(), secs, c.limit_seconds,
                detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
