#include "affhur/quasicox.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "affhur/error.hpp"

namespace affhur {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Column i is -s_{beta_m}...s_{beta_{i+1}}(beta_i)^vee, so levels k satisfy C k = lambda.
IntMatrix level_matrix(const RootSystem& rs, const FiniteTuple& seq) {
  const std::size_t n = rs.rank();
  IntMatrix c(n, seq.size());
  FiniteWeylElement suffix = FiniteWeylElement::identity(rs);
  for (std::size_t i = seq.size(); i-- > 0;) {
    const auto v = suffix.act_on_coroot(rs.coroot(seq[i]).coords);
    for (std::size_t r = 0; r < n; ++r) c(r, i) = -v[r];
    suffix = suffix * FiniteWeylElement::reflection(rs, seq[i]);
  }
  return c;
}

std::optional<std::int64_t> multiple_of(const IntVector& r, std::span<const std::int64_t> c) {
  std::optional<std::int64_t> q;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (c[i] == 0) {
      if (r[i] != 0) return std::nullopt;
      continue;
    }
    if (r[i] % c[i] != 0) return std::nullopt;
    const std::int64_t qi = r[i] / c[i];
    if (q && *q != qi) return std::nullopt;
    q = qi;
  }
  return q ? q : std::optional<std::int64_t>(0);
}

IntVector column(const IntMatrix& m, std::size_t j) {
  IntVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

AffineTuple with_levels(const FiniteTuple& seq, const IntVector& levels) {
  AffineTuple t(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) t[i] = {seq[i], levels[i]};
  return t;
}

void sequence_factorizations(const RootSystem& rs, const FiniteTuple& seq, const IntVector& lam, std::int64_t K,
                             std::vector<AffineTuple>& out) {
  const IntMatrix c = level_matrix(rs, seq);
  if (!solve_integer_system(c, lam)) return;
  const std::size_t m = seq.size();
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < m; ++j) cols.push_back(column(c, j));
  IntVector k(m, -K);
  for (;;) {
    IntVector r = lam;
    for (std::size_t j = 0; j + 1 < m; ++j)
      if (k[j] != 0) r = r - k[j] * cols[j];
    if (auto q = multiple_of(r, cols[m - 1]); q && *q >= -K && *q <= K) {
      IntVector levels = k;
      levels[m - 1] = *q;
      out.push_back(with_levels(seq, levels));
    }
    std::size_t j = 0;
    while (j + 1 < m && k[j] == K) k[j++] = -K;
    if (j + 1 >= m) break;
    ++k[j];
  }
}

IntegerLattice orbit_lattice(const FiniteWeylGroup& g, const IntVector& v) {
  return IntegerLattice::span(coroot_orbit(g, v), g.rank());
}

std::int64_t level_gap(const AffineTuple& t) { return t[t.size() - 2].level - t[t.size() - 1].level; }

// Bezout coefficients z with sum z_j f_j = gcd(f).
std::pair<std::int64_t, IntVector> bezout(const IntVector& f) {
  std::int64_t g = 0;
  IntVector z(f.size(), 0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    // a*g + b*f_j = gcd(g, f_j)
    std::int64_t old_r = g, r = f[j], old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      const std::int64_t q = old_r / r;
      std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
      std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
      std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    for (std::size_t i = 0; i < j; ++i) z[i] *= old_s;
    z[j] = old_t;
    g = old_r;
  }
  return {g, z};
}

std::int64_t max_abs_level(const AffineTuple& t) {
  std::int64_t m = 0;
  for (const auto& r : t) m = std::max(m, r.level < 0 ? -r.level : r.level);
  return m;
}

}  // namespace

bool tuple_less(const RootSystem& rs, const AffineTuple& a, const AffineTuple& b) {
  const std::size_t len = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    const auto& ca = rs.root(a[i].root).coords;
    const auto& cb = rs.root(b[i].root).coords;
    if (ca != cb) return ca < cb;
    if (a[i].level != b[i].level) return a[i].level < b[i].level;
  }
  return a.size() < b.size();
}

GenerationResult generates_affine(const RootSystem& rs, const AffineTuple& tuple, const SearchLimits& limits) {
  const std::size_t n = rs.rank();
  if (tuple.size() != n + 1) throw DomainError("generation test needs rank + 1 reflections");
  GenerationResult res;
  auto& cert = res.certificate;
  const FiniteWeylGroup group(rs);
  const FiniteTuple proj = project_tuple(tuple);
  cert.projected_generates = group.generates_w0(proj);
  if (!cert.projected_generates) return res;

  bool exhausted = false;
  auto braid = lr_normalize(rs, proj, limits, &exhausted);
  if (!braid) {
    if (exhausted) throw InternalError("generating tuple has no repeated-root form in its orbit");
    throw LimitError("normalization search hit its limits");
  }
  cert.normalizing_braid = *braid;
  const AffineTuple u = apply_braid(AffineReflectionPolicy{&rs}, tuple, *braid);
  const RootId gamma = u[n].root;
  cert.repeated_root = gamma;
  cert.level_gap = level_gap(u);

  std::vector<RationalVector> rows;
  RationalVector rhs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = rs.cartan().apply(rs.root(u[i].root).coords);
    RationalVector row;
    for (auto x : a) row.emplace_back(static_cast<long>(x));
    rows.push_back(std::move(row));
    rhs.emplace_back(static_cast<long>(-u[i].level));
  }
  auto sol = solve_rational_system(rows, rhs);
  if (!sol || !sol->directions.empty()) throw InternalError("normalized roots are not a basis");
  cert.conjugating_coweight = sol->point;

  cert.translation_lattice = orbit_lattice(group, cert.level_gap * rs.coroot(gamma).coords);
  res.generates = cert.translation_lattice == IntegerLattice::full(n);
  if (res.generates && (std::abs(cert.level_gap) != 1 || !rs.is_long(gamma)))
    throw InternalError("generating tuple violates the long-root / unit-gap condition");
  return res;
}

std::optional<bool> closure_generates(const RootSystem& rs, const AffineTuple& gens, std::size_t max_rounds) {
  const std::size_t n = rs.rank();
  std::vector<AffineWeylElement> g;
  for (const auto& r : gens) g.push_back(AffineWeylElement::reflection(rs, r));
  std::vector<IntVector> lattice_gens;
  IntegerLattice lattice = IntegerLattice::span(lattice_gens, n);

  auto saturate = [&]() {
    for (;;) {
      std::vector<IntVector> more = lattice.basis_int64();
      for (const auto& v : lattice.basis_int64())
        for (const auto& x : g) more.push_back(x.finite_part().act_on_coroot(v));
      IntegerLattice next = IntegerLattice::span(more, n);
      if (next == lattice) return;
      lattice = std::move(next);
    }
  };

  for (std::size_t round = 0; round < max_rounds; ++round) {
    std::unordered_map<FiniteWeylElement, IntVector, FiniteWeylElementHash> states;
    std::vector<AffineWeylElement> queue{AffineWeylElement::identity(rs)};
    states.emplace(queue[0].finite_part(), queue[0].translation());
    std::optional<IntVector> found;
    for (std::size_t k = 0; k < queue.size() && !found; ++k) {
      for (const auto& x : g) {
        const AffineWeylElement y = queue[k] * x;
        const IntVector red = lattice.reduce(y.translation());
        auto it = states.find(y.finite_part());
        if (it == states.end()) {
          states.emplace(y.finite_part(), red);
          queue.emplace_back(y.finite_part(), red);
        } else if (it->second != red) {
          found = red - it->second;
          break;
        }
      }
    }
    if (!found) {
      const FiniteWeylGroup group(rs);
      const bool full_projection = states.size() == group.elements().size();
      return full_projection && lattice == IntegerLattice::full(n);
    }
    auto basis = lattice.basis_int64();
    basis.push_back(*found);
    lattice = IntegerLattice::span(basis, n);
    saturate();
  }
  return std::nullopt;
}

std::vector<AffineTuple> enumerate_factorizations(const RootSystem& rs, const AffineWeylElement& target,
                                                  std::size_t m, std::int64_t K, std::size_t threads) {
  if (K < 0) throw DomainError("level bound must be non-negative");
  if (m == 0) return target.is_identity() ? std::vector<AffineTuple>{AffineTuple{}} : std::vector<AffineTuple>{};
  const FiniteWeylGroup group(rs);
  const std::size_t npos = rs.num_positive();
  std::vector<std::vector<AffineTuple>> parts(npos);
  auto work = [&](std::size_t first) {
    for (const auto& seq : group.reflection_sequences(target.finite_part(), m, RootId{static_cast<std::uint32_t>(first)}))
      sequence_factorizations(rs, seq, target.translation(), K, parts[first]);
  };
  if (threads <= 1) {
    for (std::size_t f = 0; f < npos; ++f) work(f);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(threads, npos); ++t)
      pool.emplace_back([&] {
        for (std::size_t f; (f = next++) < npos;) work(f);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<AffineTuple> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end(), [&](const AffineTuple& a, const AffineTuple& b) { return tuple_less(rs, a, b); });
  return out;
}

std::size_t absolute_length_affine(const RootSystem& rs, const AffineWeylElement& w, std::size_t ceiling) {
  if (ceiling == 0) ceiling = 2 * rs.rank();
  const FiniteWeylGroup group(rs);
  for (std::size_t m = w.finite_part().determinant() == 1 ? 0 : 1; m <= ceiling; m += 2) {
    if (m == 0) {
      if (w.is_identity()) return 0;
      continue;
    }
    for (const auto& seq : group.reflection_sequences(w.finite_part(), m))
      if (solve_integer_system(level_matrix(rs, seq), w.translation())) return m;
  }
  throw LimitError("absolute length exceeds the search ceiling " + std::to_string(ceiling));
}

QuasiCoxeterResult is_quasi_coxeter_affine(const RootSystem& rs, const AffineWeylElement& w,
                                           const QuasiLimits& limits) {
  const std::size_t n = rs.rank();
  const std::size_t m = n + 1;
  QuasiCoxeterResult res;
  res.conclusive = true;
  const std::int64_t parity = (m % 2 == 0) ? 1 : -1;
  if (w.finite_part().determinant() != parity) {
    res.note = "determinant parity excludes length " + std::to_string(m);
    return res;
  }
  const FiniteWeylGroup group(rs);
  const FiniteReflectionPolicy fin{&rs};
  const AffineReflectionPolicy aff{&rs};
  const IntegerLattice full = IntegerLattice::full(n);

  std::optional<AffineTuple> exact;
  for (const auto& seq : group.reflection_sequences(w.finite_part(), m)) {
    if (!group.generates_w0(seq)) continue;
    auto sol = solve_integer_system(level_matrix(rs, seq), w.translation());
    if (!sol) continue;
    bool exhausted = false;
    auto braid = lr_normalize(rs, seq, limits.search, &exhausted);
    if (!braid) {
      if (exhausted) throw InternalError("generating tuple has no repeated-root form in its orbit");
      throw LimitError("normalization search hit its limits");
    }
    const FiniteTuple normalized = apply_braid(fin, seq, *braid);
    if (orbit_lattice(group, rs.coroot(normalized.back()).coords) != full) continue;
    // The normalized level gap is a linear function of the levels.
    auto phi = [&](const IntVector& levels) { return level_gap(apply_braid(aff, with_levels(seq, levels), *braid)); };
    const std::int64_t f0 = phi(sol->particular);
    IntVector f;
    for (const auto& b : sol->kernel) f.push_back(phi(b));
    const auto [d, z] = bezout(f);
    for (std::int64_t target : {1, -1}) {
      const std::int64_t need = target - f0;
      if (d == 0 ? need != 0 : need % d != 0) continue;
      IntVector k = sol->particular;
      if (d != 0)
        for (std::size_t j = 0; j < f.size(); ++j) k = k + (z[j] * (need / d)) * sol->kernel[j];
      exact = with_levels(seq, k);
      break;
    }
    if (exact) break;
  }
  if (!exact) {
    res.note = "no generating factorization of length " + std::to_string(m);
    return res;
  }
  if (!generates_affine(rs, *exact, limits.search).generates || !(product(rs, *exact) == w))
    throw InternalError("exact quasi-Coxeter witness failed verification");
  res.verdict = true;

  std::optional<AffineTuple> best;
  for (const auto& t : enumerate_factorizations(rs, w, m, limits.level_bound, limits.threads)) {
    if (best && max_abs_level(t) >= max_abs_level(*best)) continue;
    if (generates_affine(rs, t, limits.search).generates) best = t;
  }
  if (best) {
    res.witness = best;
  } else {
    res.witness = exact;
    res.witness_beyond_bound = true;
    res.note = "no generating witness with |k_i| <= " + std::to_string(limits.level_bound);
  }
  return res;
}

std::vector<AffineTuple> fiber(const RootSystem& rs, const AffineTuple& base, std::int64_t K) {
  (void)rs;
  if (base.size() < 2 || base[base.size() - 1].root != base[base.size() - 2].root)
    throw DomainError("fiber base needs a repeated root in the last two entries");
  if (K < 0) throw DomainError("shift bound must be non-negative");
  std::vector<AffineTuple> out;
  for (std::int64_t j = -K; j <= K; ++j) {
    AffineTuple t = base;
    t[t.size() - 2].level += j;
    t[t.size() - 1].level += j;
    out.push_back(std::move(t));
  }
  return out;
}

ConnectReport connect_reduced(const RootSystem& rs, const AffineWeylElement& w, const AffineTuple& t1,
                              const AffineTuple& t2, const SearchLimits& limits) {
  if (t1.size() != t2.size()) throw DomainError("tuples of different length");
  if (!(product(rs, t1) == w) || !(product(rs, t2) == w)) throw DomainError("tuple is not a factorization of w");
  ConnectReport rep;
  const AffineReflectionPolicy aff{&rs};
  const FiniteReflectionPolicy fin{&rs};
  if (t1 == t2) {
    rep.word = BraidWord{};
    rep.pipeline = true;
    return rep;
  }

  auto staged = [&]() -> std::optional<BraidWord> {
    const std::size_t m = t1.size();
    const FiniteWeylGroup group(rs);
    if (m != rs.rank() + 1) {
      rep.failed_stage = "shape";
      return std::nullopt;
    }
    if (!group.generates_w0(project_tuple(t1)) || !group.generates_w0(project_tuple(t2))) {
      rep.failed_stage = "projection";
      return std::nullopt;
    }
    auto t0 = Clock::now();
    bool ex1 = false, ex2 = false;
    auto b1 = lr_normalize(rs, project_tuple(t1), limits, &ex1);
    auto b2 = lr_normalize(rs, project_tuple(t2), limits, &ex2);
    rep.stage_seconds[0] = seconds_since(t0);
    if (!b1 || !b2) {
      rep.failed_stage = "normalize";
      rep.limits_hit = !(ex1 && ex2);
      return std::nullopt;
    }
    const AffineTuple u1 = apply_braid(aff, t1, *b1);
    const AffineTuple u2 = apply_braid(aff, t2, *b2);

    t0 = Clock::now();
    auto c = connect(fin, project_tuple(u1), project_tuple(u2), limits);
    rep.stage_seconds[1] = seconds_since(t0);
    if (!c) {
      rep.failed_stage = "align";
      rep.limits_hit = true;
      return std::nullopt;
    }
    const AffineTuple v1 = apply_braid(aff, u1, *c);

    t0 = Clock::now();
    for (std::size_t i = 0; i + 2 < m; ++i)
      if (v1[i].level != u2[i].level) {
        rep.failed_stage = "fiber";
        return std::nullopt;
      }
    const std::int64_t g = level_gap(v1);
    const std::int64_t j = u2[m - 2].level - v1[m - 2].level;
    if (g != level_gap(u2) || g == 0 || j % g != 0) {
      rep.failed_stage = "fiber";
      return std::nullopt;
    }
    const std::int64_t p = j / g;
    BraidWord shift(static_cast<std::size_t>(p < 0 ? -p : p), p < 0 ? -static_cast<int>(m - 1) : static_cast<int>(m - 1));
    rep.stage_seconds[2] = seconds_since(t0);
    BraidWord word = concat(concat(concat(*b1, *c), shift), inverse_word(*b2));
    if (!(apply_braid(aff, t1, word) == t2)) throw InternalError("pipeline braid word failed verification");
    return word;
  };

  if (auto w1 = staged()) {
    rep.word = std::move(w1);
    rep.pipeline = true;
    return rep;
  }
  const auto t0 = Clock::now();
  rep.word = connect(aff, t1, t2, limits);
  rep.stage_seconds[3] = seconds_since(t0);
  if (!rep.word) rep.limits_hit = true;
  return rep;
}

namespace {

mpq_class qpairing(const RootSystem& rs, const RationalVector& v, RootId alpha) {
  const auto a = rs.cartan().apply(rs.root(alpha).coords);
  mpq_class acc = 0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += v[j] * static_cast<long>(a[j]);
  return acc;
}

}  // namespace

bool is_parabolic_quasi_coxeter_affine(const RootSystem& rs, const AffineWeylElement& w, const QuasiLimits& limits) {
  const std::size_t n = rs.rank();
  const std::size_t len = absolute_length_affine(rs, w, limits.length_ceiling);
  if (len == 0) return true;
  if (len == n + 1) return is_quasi_coxeter_affine(rs, w, limits).verdict;
  if (len > n + 1) return false;
  const AffineReflectionPolicy aff{&rs};
  for (const auto& f : enumerate_factorizations(rs, w, len, limits.level_bound, limits.threads)) {
    const auto space = fixed_affine_subspace(rs, f);
    if (!space) continue;
    std::set<AffineReflection> fixer;
    for (std::uint32_t i = 0; i < rs.num_positive(); ++i) {
      const RootId a{i};
      bool vanishes = true;
      for (const auto& d : space->directions) vanishes = vanishes && qpairing(rs, d, a) == 0;
      if (!vanishes) continue;
      const mpq_class k = qpairing(rs, space->point, a);
      if (k.get_den() == 1) fixer.insert({a, k.get_num().get_si()});
    }
    std::set<AffineReflection> generated(f.begin(), f.end());
    std::vector<AffineReflection> queue(f.begin(), f.end());
    for (std::size_t k = 0; k < queue.size() && generated.size() <= fixer.size(); ++k)
      for (const auto& g : f) {
        const auto x = aff.conj(g, queue[k]);
        if (generated.insert(x).second) queue.push_back(x);
      }
    if (generated == fixer) return true;
  }
  return false;
}

}  // namespace affhur
