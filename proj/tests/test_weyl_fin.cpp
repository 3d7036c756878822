#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "affhur/intlattice.hpp"
#include "affhur/weyl_fin.hpp"
#include "oracles.hpp"

using namespace affhur;

namespace {

const std::vector<CartanType> kSmall{{Family::A, 2}, {Family::B, 2}, {Family::G, 2}, {Family::A, 3}};

std::size_t group_order(const CartanType& t) {
  if (t == CartanType{Family::A, 2}) return 6;
  if (t == CartanType{Family::B, 2}) return 8;
  if (t == CartanType{Family::G, 2}) return 12;
  if (t == CartanType{Family::A, 3}) return 24;
  if (t == CartanType{Family::B, 3}) return 48;
  return 0;
}

// All m-tuples of positive roots with product w, by plain odometer.
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

// Root sets of all parabolic subgroups: W-conjugates of standard parabolic root subsystems.
std::set<std::set<IntVector>> parabolic_root_sets(const FiniteWeylGroup& g) {
  const auto& rs = g.roots();
  const auto elems = g.elements();
  std::set<std::set<IntVector>> out;
  for (std::uint32_t mask = 0; mask < (1u << rs.rank()); ++mask) {
    std::set<IntVector> std_roots;
    for (auto id : oracle::all(rs)) {
      bool inside = true;
      for (std::size_t i = 0; i < rs.rank(); ++i)
        if (!(mask >> i & 1) && rs.root(id).coords[i] != 0) inside = false;
      if (inside) std_roots.insert(rs.root(id).coords);
    }
    for (const auto& w : elems) {
      std::set<IntVector> conj;
      for (const auto& v : std_roots) conj.insert(w.act_on_root(v));
      out.insert(conj);
    }
  }
  return out;
}

FiniteWeylElement coxeter(const FiniteWeylGroup& g) {
  FiniteTuple t;
  for (std::size_t i = 0; i < g.rank(); ++i) t.push_back(g.roots().simple(i));
  return g.product(t);
}

}  // namespace

TEST_CASE("reflections as elements") {
  const RootSystem a2(Family::A, 2);
  const FiniteWeylGroup g(a2);
  for (auto a : oracle::all(a2)) {
    const auto s = FiniteWeylElement::reflection(a2, a);
    CHECK((s * s).is_identity());
    CHECK(s.determinant() == -1);
    CHECK(s == FiniteWeylElement::reflection(a2, a2.negate(a)));
  }
  const auto c = coxeter(g);
  CHECK_FALSE(c.is_identity());
  CHECK_FALSE((c * c).is_identity());
  CHECK((c * c * c).is_identity());
  CHECK_THROWS_AS(FiniteWeylElement::from_matrix(a2, IntMatrix{{2, 0}, {0, 1}}), DomainError);
  CHECK(FiniteWeylElement::from_matrix(a2, c.matrix()) == c);
  CHECK((c * c.inverse()).is_identity());
}

TEST_CASE("group orders") {
  for (const auto& t : {CartanType{Family::A, 2}, CartanType{Family::B, 2}, CartanType{Family::G, 2},
                        CartanType{Family::A, 3}, CartanType{Family::B, 3}}) {
    const RootSystem rs(t);
    CHECK(FiniteWeylGroup(rs).elements().size() == group_order(t));
  }
}

TEST_CASE("absolute length equals the BFS minimum") {
  for (const auto& t : {CartanType{Family::A, 2}, CartanType{Family::B, 2}, CartanType{Family::A, 3},
                        CartanType{Family::B, 3}}) {
    CAPTURE(t.name());
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    const auto dist = oracle::reflection_lengths(rs);
    const auto elems = g.elements();
    REQUIRE(dist.size() == elems.size());
    for (const auto& w : elems) {
      REQUIRE(absolute_length(w) == dist.at(w.matrix().data()));
      REQUIRE((absolute_length(w) % 2 == 0) == (w.determinant() == 1));
    }
  }
  const RootSystem a2(Family::A, 2);
  const FiniteWeylGroup g(a2);
  CHECK(absolute_length(g.identity()) == 0);
  CHECK(absolute_length(coxeter(g)) == 2);
}

TEST_CASE("parity of factorization lengths") {
  std::mt19937_64 rng(3);
  for (const auto& t : kSmall) {
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    std::uniform_int_distribution<std::uint32_t> root(0, static_cast<std::uint32_t>(rs.num_positive() - 1));
    std::uniform_int_distribution<int> len(0, 7);
    for (int s = 0; s < 1000; ++s) {
      FiniteTuple tup(static_cast<std::size_t>(len(rng)));
      for (auto& x : tup) x = RootId{root(rng)};
      const auto w = g.product(tup);
      REQUIRE(absolute_length(w) <= tup.size());
      REQUIRE((tup.size() - absolute_length(w)) % 2 == 0);
    }
  }
}

TEST_CASE("absolute order") {
  for (const auto& t : {CartanType{Family::A, 2}, CartanType{Family::B, 2}, CartanType{Family::A, 3}}) {
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    for (const auto& w : g.elements()) {
      CHECK(leq_T(g.identity(), w));
      CHECK(leq_T(w, w));
      if (absolute_length(w) != rs.rank()) continue;
      for (auto a : oracle::positive(rs)) CHECK(leq_T(g.reflection(a), w));
    }
  }
  const RootSystem a2(Family::A, 2);
  const FiniteWeylGroup g(a2);
  CHECK_FALSE(leq_T(g.reflection(a2.simple(0)), g.reflection(a2.simple(1))));
}

TEST_CASE("reduced factorizations are complete") {
  for (const auto& t : kSmall) {
    CAPTURE(t.name());
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    for (const auto& w : g.elements()) {
      const auto red = g.reduced_factorizations(w);
      const auto brute = brute_sequences(g, w, absolute_length(w));
      REQUIRE(std::set<FiniteTuple>(red.begin(), red.end()) == brute);
      REQUIRE(red.size() == brute.size());
      REQUIRE(std::is_sorted(red.begin(), red.end()));
    }
  }
  const RootSystem a2(Family::A, 2), b2(Family::B, 2);
  CHECK(FiniteWeylGroup(a2).reduced_factorizations(coxeter(FiniteWeylGroup(a2))).size() == 3);
  CHECK(FiniteWeylGroup(b2).reduced_factorizations(coxeter(FiniteWeylGroup(b2))).size() == 4);
  const FiniteWeylGroup g(a2);
  const auto single = g.reduced_factorizations(g.reflection(a2.simple(0)));
  REQUIRE(single.size() == 1);
  CHECK(single[0] == FiniteTuple{a2.simple(0)});
}

TEST_CASE("longer reflection sequences and fac sets") {
  for (const auto& t : {CartanType{Family::A, 2}, CartanType{Family::B, 2}}) {
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    const std::size_t order = group_order(t);
    for (const auto& w : g.elements())
      for (std::size_t m = absolute_length(w); m <= 4; m += 2) {
        const auto seq = g.reflection_sequences(w, m);
        REQUIRE(std::set<FiniteTuple>(seq.begin(), seq.end()) == brute_sequences(g, w, m));
        std::set<FiniteTuple> gen;
        for (const auto& s : seq)
          if (closure_size(rs, s) == order) gen.insert(s);
        const auto fac = g.fac_set(w, m);
        REQUIRE(std::set<FiniteTuple>(fac.begin(), fac.end()) == gen);
      }
  }
  const RootSystem a2(Family::A, 2);
  const FiniteWeylGroup g(a2);
  const auto s1 = g.reflection(a2.simple(0));
  const auto fac = g.fac_set(s1, 3);
  // Everything except (s1, s1, s1) generates.
  CHECK(brute_sequences(g, s1, 3).size() == 9);
  CHECK(fac.size() == 8);
  CHECK(g.fac_set(g.identity(), 3).empty());
  // For a quasi-Coxeter element, Fac at the reduced length is inside Red_T.
  const auto c = coxeter(g);
  const auto red = g.reduced_factorizations(c);
  for (const auto& f : g.fac_set(c, 2)) CHECK(std::find(red.begin(), red.end(), f) != red.end());
}

TEST_CASE("generation of W0") {
  for (const auto& t : kSmall) {
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    const auto pos = oracle::positive(rs);
    for (std::uint32_t mask = 1; mask < (1u << pos.size()); ++mask) {
      if (pos.size() > 6 && __builtin_popcount(mask) > 3) continue;
      std::vector<RootId> r;
      for (std::size_t i = 0; i < pos.size(); ++i)
        if (mask >> i & 1) r.push_back(pos[i]);
      REQUIRE(g.generates_w0(r) == (closure_size(rs, r) == group_order(t)));
      REQUIRE(g.subgroup(r).size() == closure_size(rs, r));
    }
  }
  const RootSystem b2(Family::B, 2), a3(Family::A, 3);
  std::vector<RootId> longs;
  for (auto a : oracle::positive(b2))
    if (b2.is_long(a)) longs.push_back(a);
  CHECK_FALSE(FiniteWeylGroup(b2).generates_w0(longs));
  CHECK(FiniteWeylGroup(b2).generates_w0(std::vector<RootId>{b2.simple(0), b2.simple(1)}));
  CHECK_FALSE(FiniteWeylGroup(a3).generates_w0(std::vector<RootId>{a3.simple(0), a3.simple(2)}));
}

TEST_CASE("parabolic subgroups against conjugates of standard parabolics") {
  for (const auto& t : {CartanType{Family::A, 2}, CartanType{Family::B, 2}, CartanType{Family::G, 2},
                        CartanType{Family::A, 3}, CartanType{Family::B, 3}}) {
    CAPTURE(t.name());
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    const auto parabolics = parabolic_root_sets(g);
    const auto pos = oracle::positive(rs);
    for (std::uint32_t mask = 1; mask < (1u << pos.size()); ++mask) {
      std::vector<RootId> r;
      for (std::size_t i = 0; i < pos.size(); ++i)
        if (mask >> i & 1) r.push_back(pos[i]);
      std::set<IntVector> sub;
      for (auto x : smallest_subsystem(rs, r)) sub.insert(rs.root(x).coords);
      REQUIRE(g.is_parabolic(r) == parabolics.contains(sub));
    }
  }
  const RootSystem b2(Family::B, 2), a3(Family::A, 3);
  std::vector<RootId> shorts;
  for (auto a : oracle::positive(b2))
    if (!b2.is_long(a)) shorts.push_back(a);
  CHECK_FALSE(FiniteWeylGroup(b2).is_parabolic(shorts));
  CHECK(FiniteWeylGroup(b2).is_parabolic(std::vector<RootId>{b2.simple(0)}));
  CHECK(FiniteWeylGroup(a3).is_parabolic(std::vector<RootId>{a3.simple(0), a3.simple(2)}));
}

TEST_CASE("quasi-Coxeter elements") {
  for (const auto& t : kSmall) {
    CAPTURE(t.name());
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    const auto parabolics = parabolic_root_sets(g);
    for (const auto& w : g.elements()) {
      bool qc = false, pqc = false;
      for (const auto& f : brute_sequences(g, w, absolute_length(w))) {
        if (f.empty()) continue;
        qc |= absolute_length(w) == rs.rank() && closure_size(rs, f) == group_order(t);
        std::set<IntVector> sub;
        for (auto x : smallest_subsystem(rs, f)) sub.insert(rs.root(x).coords);
        pqc |= parabolics.contains(sub);
      }
      if (absolute_length(w) == 0) pqc = true;
      REQUIRE(g.is_quasi_coxeter(w) == qc);
      REQUIRE(g.is_parabolic_quasi_coxeter(w) == pqc);
    }
  }
  const RootSystem a2(Family::A, 2), b2(Family::B, 2);
  CHECK(FiniteWeylGroup(a2).is_quasi_coxeter(coxeter(FiniteWeylGroup(a2))));
  const FiniteWeylGroup gb(b2);
  CHECK(gb.is_parabolic_quasi_coxeter(gb.reflection(b2.simple(0))));
  std::vector<RootId> shorts;
  for (auto a : oracle::positive(b2))
    if (!b2.is_long(a)) shorts.push_back(a);
  const auto rot = gb.product(shorts);  // rotation by pi
  CHECK(rot.matrix() == IntMatrix{{-1, 0}, {0, -1}});
  CHECK_FALSE(gb.is_quasi_coxeter(rot));
  CHECK_FALSE(gb.is_parabolic_quasi_coxeter(rot));
}

TEST_CASE("rank-2 parabolics in B3 extend to W with one reflection") {
  const RootSystem rs(Family::B, 3);
  const FiniteWeylGroup g(rs);
  const auto pos = oracle::positive(rs);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      const std::vector<RootId> r{pos[i], pos[j]};
      if (!g.is_parabolic(r)) continue;
      bool found = false;
      for (auto t : pos) found |= g.generates_w0(std::vector<RootId>{pos[i], pos[j], t});
      CHECK(found);
      ++checked;
    }
  CHECK(checked > 0);
}

TEST_CASE("transformed coroots of a generating set form a basis") {
  for (const auto& t : {CartanType{Family::A, 2}, CartanType{Family::B, 2}, CartanType{Family::A, 3}}) {
    CAPTURE(t.name());
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    const auto pos = oracle::positive(rs);
    const std::size_t n = rs.rank();
    std::vector<std::size_t> idx(n, 0);
    std::size_t generating = 0;
    for (;;) {
      FiniteTuple r;
      for (auto i : idx) r.push_back(pos[i]);
      if (g.generates_w0(r)) {
        ++generating;
        std::vector<IntVector> vs;
        for (std::size_t i = 0; i < n; ++i) {
          IntVector v = rs.coroot(r[i]).coords;
          for (std::size_t j = i + 1; j + 1 < n; ++j) v = g.reflection(r[j]).act_on_coroot(v);
          vs.push_back(v);
        }
        REQUIRE(IntegerLattice::span(vs, n) == IntegerLattice::full(n));
      }
      std::size_t j = 0;
      while (j < n && ++idx[j] == pos.size()) idx[j++] = 0;
      if (j == n) break;
    }
    CHECK(generating > 0);
  }
}

TEST_CASE("transformed coroots stay in the coroot span") {
  std::mt19937_64 rng(5);
  for (const auto& t : {CartanType{Family::B, 3}, CartanType{Family::G, 2}}) {
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    std::uniform_int_distribution<std::uint32_t> root(0, static_cast<std::uint32_t>(rs.num_roots() - 1));
    std::uniform_int_distribution<int> len(1, 5);
    for (int s = 0; s < 500; ++s) {
      FiniteTuple b(static_cast<std::size_t>(len(rng)));
      for (auto& x : b) x = RootId{root(rng)};
      IntVector v = rs.coroot(b[0]).coords;
      for (std::size_t i = 1; i < b.size(); ++i) v = g.reflection(b[i]).act_on_coroot(v);
      std::vector<IntVector> span;
      for (auto x : b) span.push_back(rs.coroot(x).coords);
      REQUIRE(IntegerLattice::span(span, rs.rank()).contains(v));
    }
  }
}

TEST_CASE("coroot action and orbits") {
  for (const auto& t : kSmall) {
    const RootSystem rs(t);
    const FiniteWeylGroup g(rs);
    // s_alpha on coroots sends beta^vee to (s_alpha beta)^vee.
    for (auto a : oracle::all(rs))
      for (auto b : oracle::all(rs)) {
        const auto img = g.reflection(a).act_on_coroot(rs.coroot(b).coords);
        REQUIRE(img == rs.coroot(rs.reflect(a, b)).coords);
        REQUIRE(g.reflection(a).inverse_act_on_coroot(img) == rs.coroot(b).coords);
      }
    std::set<IntVector> expected;
    for (auto a : oracle::all(rs))
      if (rs.is_long(a) == rs.is_long(rs.highest_root())) expected.insert(rs.coroot(a).coords);
    const auto orbit = coroot_orbit(g, rs.coroot(rs.highest_root()).coords);
    CHECK(std::set<IntVector>(orbit.begin(), orbit.end()) == expected);
  }
}
