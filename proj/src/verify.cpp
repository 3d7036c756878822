#include "affhur/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "affhur/error.hpp"
#include "affhur/literals.hpp"

namespace affhur {

namespace {

using Clock = std::chrono::steady_clock;

struct Ctx {
  const std::string& suite;
  const std::string& group;
  std::vector<CheckResult>& out;

  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{suite, group, name, true, "", 0};
    const auto t0 = Clock::now();
    try {
      r.detail = body();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.push_back(std::move(r));
  }
};

// Throwing inside a check marks it failed with the message as counterexample.
void require(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

std::vector<RootId> all_roots(const RootSystem& rs) {
  std::vector<RootId> v;
  for (std::uint32_t i = 0; i < rs.num_roots(); ++i) v.push_back({i});
  return v;
}

std::vector<RootId> positive_roots(const RootSystem& rs) {
  std::vector<RootId> v;
  for (std::uint32_t i = 0; i < rs.num_positive(); ++i) v.push_back({i});
  return v;
}

AffineTuple coxeter_tuple(const RootSystem& rs) {
  AffineTuple t;
  for (std::size_t i = 0; i < rs.rank(); ++i) t.push_back({rs.simple(i), 0});
  t.push_back({rs.highest_root(), 1});
  return t;
}

// Minimal number of reflections, by breadth-first search over the group.
std::map<std::vector<std::int64_t>, std::size_t> bfs_lengths(const FiniteWeylGroup& g) {
  std::map<std::vector<std::int64_t>, std::size_t> dist;
  std::vector<FiniteWeylElement> queue{g.identity()};
  dist[g.identity().matrix().data()] = 0;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const std::size_t d = dist[queue[k].matrix().data()];
    for (std::uint32_t i = 0; i < g.roots().num_positive(); ++i) {
      FiniteWeylElement x = queue[k] * g.reflection({i});
      if (dist.emplace(x.matrix().data(), d + 1).second) queue.push_back(std::move(x));
    }
  }
  return dist;
}

void lemmas(Ctx& c, const RootSystem& rs, const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  const std::size_t n = rs.rank();

  c.run("root-closure", [&] {
    require(close_root_set(rs.cartan()).size() == rs.num_roots(), "root count differs from independent closure");
    for (auto a : all_roots(rs))
      for (auto b : all_roots(rs)) require(rs.contains(rs.reflect(rs.root(a), rs.root(b))), "reflection leaves the root set");
    return std::to_string(rs.num_roots()) + " roots";
  });

  c.run("norm-dichotomy", [&] {
    std::set<std::int64_t> norms;
    for (auto a : all_roots(rs)) norms.insert(rs.inner(rs.root(a), rs.root(a)));
    require(norms.size() <= 2, "more than two root lengths");
    require(*norms.rbegin() == rs.ratio_delta() * *norms.begin(), "length ratio differs from delta");
    return "delta = " + std::to_string(rs.ratio_delta());
  });

  c.run("crystallographic-values", [&] {
    std::size_t count = 0;
    const std::int64_t d = rs.ratio_delta();
    for (auto a : all_roots(rs))
      for (auto b : all_roots(rs)) {
        if (rs.is_long(a) == rs.is_long(b)) continue;
        const std::int64_t ab = rs.inner(rs.root(a), rs.root(b));
        if (ab == 0) continue;
        const std::int64_t bb = rs.inner(rs.root(b), rs.root(b));
        require(2 * ab % bb == 0, "non-integral Cartan number");
        const std::int64_t v = 2 * ab / bb;
        require(v == 1 || v == -1 || v == d || v == -d, "Cartan number outside {+-1, +-delta}");
        ++count;
      }
    return std::to_string(count) + " mixed pairs";
  });

  c.run("highest-root", [&] {
    std::size_t count = 0;
    for (auto a : positive_roots(rs)) {
      bool top = true;
      for (std::size_t i = 0; i < n; ++i) top = top && !rs.contains(Root{rs.root(a).coords + rs.root(rs.simple(i)).coords});
      if (top) {
        ++count;
        require(a == rs.highest_root(), "maximal root differs from the stored highest root");
      }
    }
    require(count == 1, "highest root is not unique");
    return std::string("unique");
  });

  c.run("affine-conjugation", [&] {
    const std::int64_t range = n <= 2 ? 3 : 1;
    std::size_t count = 0;
    for (auto a : all_roots(rs))
      for (auto b : all_roots(rs))
        for (std::int64_t k = -range; k <= range; ++k)
          for (std::int64_t l = -range; l <= range; ++l) {
            const auto x = make_reflection(rs, a, k);
            const auto y = make_reflection(rs, b, l);
            const auto ex = AffineWeylElement::reflection(rs, x);
            const auto generic = ex * AffineWeylElement::reflection(rs, y) * ex;
            const auto closed = aff_conjugate_reflection(rs, x, y);
            require(AffineWeylElement::reflection(rs, closed) == generic,
                    "closed form differs at " + format_affine_reflection(rs, x) + ", " + format_affine_reflection(rs, y));
            ++count;
          }
    return std::to_string(count) + " cases";
  });

  c.run("affine-factorization", [&] {
    std::uniform_int_distribution<std::uint32_t> root(0, static_cast<std::uint32_t>(rs.num_roots() - 1));
    std::uniform_int_distribution<int> level(-3, 3), len(1, 4);
    for (int s = 0; s < 2000; ++s) {
      AffineTuple t;
      for (int i = len(rng); i > 0; --i) t.push_back(make_reflection(rs, {root(rng)}, level(rng)));
      translation_part_of_product(rs, t);
    }
    return std::string("2000 random sequences");
  });

  c.run("absolute-length", [&] {
    if (n > 3) return std::string("skipped above rank 3");
    const FiniteWeylGroup g(rs);
    const auto oracle = bfs_lengths(g);
    for (const auto& w : g.elements())
      require(absolute_length(w) == oracle.at(w.matrix().data()), "length differs from BFS");
    return std::to_string(oracle.size()) + " elements";
  });

  c.run("mixed-sublattices", [&] {
    if (rs.ratio_delta() == 1) return std::string("simply laced, vacuous");
    const auto lr = mixed_root_sublattice(rs);
    const auto lc = mixed_coroot_sublattice(rs);
    for (auto a : all_roots(rs)) {
      if (!rs.is_long(a)) require(!lr.contains(rs.root(a).coords), "short root inside the mixed root sublattice");
      if (rs.is_long(a)) require(!lc.contains(rs.coroot(a).coords), "short coroot inside the mixed coroot sublattice");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = FiniteWeylElement::reflection(rs, rs.simple(i));
      for (const auto& v : lr.basis_int64()) require(lr.contains(s.act_on_root(v)), "mixed root sublattice not stable");
      for (const auto& v : lc.basis_int64()) require(lc.contains(s.act_on_coroot(v)), "mixed coroot sublattice not stable");
    }
    return std::string("no short root, stable");
  });

  c.run("subsystem-generation", [&] {
    const auto pos = positive_roots(rs);
    if (pos.size() > 9) return std::string("skipped above 9 positive roots");
    std::vector<std::vector<RootId>> subsystems;
    for (std::uint32_t mask = 1; mask < (1u << pos.size()); ++mask) {
      std::vector<RootId> r;
      for (std::size_t i = 0; i < pos.size(); ++i)
        if (mask >> i & 1) r.push_back(pos[i]);
      auto closure = reflection_closure(rs, r);
      std::erase_if(closure, [&](RootId x) { return !rs.is_positive(x); });
      if (closure == r) subsystems.push_back(r);
    }
    std::size_t cases = 0;
    for (std::uint32_t mask = 1; mask < (1u << pos.size()); ++mask) {
      std::vector<RootId> r;
      for (std::size_t i = 0; i < pos.size(); ++i)
        if (mask >> i & 1) r.push_back(pos[i]);
      const auto wr = smallest_subsystem(rs, r);
      const auto lr = root_lattice_of(rs, r);
      const auto lc = coroot_lattice_of(rs, r);
      for (const auto& sub : subsystems) {
        if (!std::includes(sub.begin(), sub.end(), r.begin(), r.end())) continue;
        std::vector<RootId> full = sub;
        for (auto x : sub) full.push_back(rs.negate(x));
        std::sort(full.begin(), full.end());
        const bool b = full == wr;
        const bool d = root_lattice_of(rs, full) == lr && coroot_lattice_of(rs, full) == lc;
        require(b == d, "equivalence fails for a subset of size " + std::to_string(r.size()));
        ++cases;
      }
    }
    return std::to_string(cases) + " (R, subsystem) pairs";
  });

  c.run("braid-relations", [&] {
    const AffineReflectionPolicy aff{&rs};
    std::uniform_int_distribution<std::uint32_t> root(0, static_cast<std::uint32_t>(rs.num_positive() - 1));
    std::uniform_int_distribution<int> level(-2, 2);
    for (int s = 0; s < 1000; ++s) {
      AffineTuple t;
      for (int i = 0; i < 4; ++i) t.push_back({RootId{root(rng)}, level(rng)});
      const auto w = product(rs, t);
      require(apply_braid(aff, t, {1, 3}) == apply_braid(aff, t, {3, 1}), "far commutation fails");
      require(apply_braid(aff, t, {1, 2, 1}) == apply_braid(aff, t, {2, 1, 2}), "braid relation fails");
      require(apply_braid(aff, t, {2, -2}) == t, "move and inverse do not cancel");
      require(product(rs, apply_braid(aff, t, {1, -3, 2})) == w, "product not preserved");
    }
    return std::string("1000 random 4-tuples");
  });

  c.run("dihedral-chain", [&] {
    const AffineReflectionPolicy aff{&rs};
    for (auto a : positive_roots(rs))
      for (std::int64_t k = -4; k <= 4; ++k) {
        const AffineTuple from{{a, 1}, {a, 0}}, to{{a, k + 1}, {a, k}};
        BraidWord w(static_cast<std::size_t>(k < 0 ? -k : k), k < 0 ? -1 : 1);
        require(apply_braid(aff, from, w) == to, "sigma_1 power does not shift levels");
      }
    return std::string("all roots, k in [-4, 4]");
  });
}

void example_a2(Ctx& c, const VerifyOptions& opt) {
  const RootSystem rs(Family::A, 2);
  const RootId a1 = rs.simple(0), a2 = rs.simple(1), h = rs.highest_root();
  const AffineTuple cox{{a1, 0}, {a2, 0}, {h, 1}};
  AffineTuple sq = cox;
  sq.insert(sq.end(), cox.begin(), cox.end());
  const AffineWeylElement w = product(rs, sq);
  // Displayed tuple, and its image under the diagram swap followed by inversion.
  const AffineTuple displayed{{h, 1}, {h, 0}, {a2, 1}, {a2, 0}};
  const AffineTuple mirrored{{a1, 0}, {a1, 1}, {h, 0}, {h, 1}};
  const AffineTuple first{{h, 0}, {a2, 1}, {a2, 0}, {h, 1}};

  c.run("translation", [&] {
    require(w.is_translation(), "w is not a translation");
    require(w.translation() == IntVector{-2, -1}, "unexpected translation");
    require(product(rs, displayed).translation() == IntVector{1, 2}, "displayed tuple translation");
    return std::string("w = tr(-2,-1); displayed tuple multiplies to tr(1,2)");
  });
  c.run("absolute-length", [&] {
    require(absolute_length_affine(rs, w) == 4, "length of w");
    require(absolute_length_affine(rs, product(rs, displayed)) == 4, "length of the displayed product");
    require(enumerate_factorizations(rs, w, 2, 50).empty(), "length-2 factorization found");
    return std::string("4");
  });
  c.run("enumeration", [&] {
    const auto f = enumerate_factorizations(rs, product(rs, displayed), 4, 2, opt.limits.threads);
    require(std::find(f.begin(), f.end(), displayed) != f.end(), "displayed tuple not enumerated");
    const auto g = enumerate_factorizations(rs, w, 4, 2, opt.limits.threads);
    require(std::find(g.begin(), g.end(), mirrored) != g.end(), "mirrored tuple not enumerated");
    require(std::find(g.begin(), g.end(), first) != g.end(), "first decomposition not enumerated");
    return std::to_string(g.size()) + " factorizations at K=2";
  });
  c.run("chains", [&] {
    const FiniteReflectionPolicy fin{&rs};
    const BraidWord moves{2, 1, 3, 2};
    const std::vector<std::vector<FiniteTuple>> chains{
        {{a1, a1, a2, a2}, {a2, a2, a1, a1}},
        {{a1, a1, a2, a2}, {a2, a1, a1, a2}, {a2, a2, h, h}, {h, h, a2, a2}},
        {{a1, a1, a2, a2}, {a1, a2, a2, a1}, {h, h, a1, a1}, {a1, a1, h, h}}};
    for (const auto& chain : chains) {
      require(apply_braid(fin, chain[chain.size() - 2], moves) == chain.back(), "sigma_2 sigma_1 sigma_3 sigma_2 step");
      for (std::size_t i = 0; i + 2 < chain.size(); ++i) {
        auto word = connect(fin, chain[i], chain[i + 1], {8, 100000});
        require(word && apply_braid(fin, chain[i], *word) == chain[i + 1], "unlabelled step not connected");
      }
    }
    return std::string("3 chains");
  });
  c.run("connect", [&] {
    const auto rep = connect_reduced(rs, w, first, mirrored, opt.limits.search);
    require(rep.word.has_value(), "no braid word found");
    return Json(*rep.word).dump();
  });
}

void generation(Ctx& c, const RootSystem& rs, const VerifyOptions& opt) {
  const std::size_t n = rs.rank();
  const auto pos = positive_roots(rs);
  c.run("long-root-unit-gap", [&] {
    if (n > 2) return std::string("skipped above rank 2");
    std::size_t generating = 0, total = 0;
    for (auto g1 : pos)
      for (auto g2 : pos)
        for (int l1 = -2; l1 <= 2; ++l1)
          for (int l2 = -2; l2 <= 2; ++l2)
            for (int l3 = -2; l3 <= 2; ++l3) {
              const AffineTuple t{{g1, l1}, {g2, l2}, {g2, l3}};
              const auto r = generates_affine(rs, t, opt.limits.search);
              ++total;
              if (!r.generates) continue;
              ++generating;
              require(rs.is_long(g2) && std::abs(l2 - l3) == 1, "generating tuple " + Json(to_json(rs, t)).dump());
            }
    return std::to_string(generating) + " of " + std::to_string(total) + " generate";
  });
  c.run("closure-oracle", [&] {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> root(0, pos.size() - 1);
    std::uniform_int_distribution<int> level(-2, 2);
    std::size_t agree = 0;
    for (int s = 0; s < 200; ++s) {
      AffineTuple t;
      for (std::size_t i = 0; i <= n; ++i) t.push_back({pos[root(rng)], level(rng)});
      const auto oracle = closure_generates(rs, t);
      require(oracle.has_value(), "closure oracle hit its cap");
      require(*oracle == generates_affine(rs, t, opt.limits.search).generates, "disagreement on " + to_json(rs, t).dump());
      agree += *oracle;
    }
    return "200 tuples, " + std::to_string(agree) + " generating";
  });
}

void main_theorem(Ctx& c, const RootSystem& rs, const VerifyOptions& opt) {
  const auto w = product(rs, coxeter_tuple(rs));
  c.run("coxeter-element", [&] {
    auto facs = enumerate_factorizations(rs, w, rs.rank() + 1, opt.limits.level_bound, opt.limits.threads);
    if (facs.size() > opt.pair_cap) facs.resize(opt.pair_cap);
    std::size_t pairs = 0;
    for (const auto& a : facs)
      for (const auto& b : facs) {
        const auto rep = connect_reduced(rs, w, a, b, opt.limits.search);
        require(rep.word && rep.pipeline, "pipeline failed at stage " + rep.failed_stage + " for " +
                                              to_json(rs, a).dump() + " -> " + to_json(rs, b).dump());
        ++pairs;
      }
    return std::to_string(facs.size()) + " factorizations, " + std::to_string(pairs) + " pairs";
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemmas", "example-a2", "generation", "main-theorem"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const std::vector<std::string>& groups,
                                   const VerifyOptions& options) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw ParseError("unknown suite '" + suite + "'");
  std::vector<CheckResult> out;
  if (suite == "example-a2") {
    const std::string g = "affine:A2";
    Ctx c{suite, g, out};
    example_a2(c, options);
    return out;
  }
  for (const auto& name : groups) {
    const GroupSpec spec = parse_group(name);
    const RootSystem rs(spec.type);
    const std::string g = spec.name();
    Ctx c{suite, g, out};
    if (suite == "lemmas") lemmas(c, rs, options);
    if (suite == "generation") generation(c, rs, options);
    if (suite == "main-theorem") main_theorem(c, rs, options);
  }
  return out;
}

}  // namespace affhur
