#include "affhur/intlattice.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "affhur/error.hpp"

namespace affhur {

BigVector to_big(std::span<const std::int64_t> v) {
  BigVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

IntVector to_int64(const BigVector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw DomainError("integer overflow converting lattice vector");
    out.push_back(x.get_si());
  }
  return out;
}

namespace {

void axpy(BigVector& y, const mpz_class& a, const BigVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= a * x[i];
}

bool all_zero(const BigVector& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

// Hermite normal form of the row span, rows in echelon order.
std::pair<BigMatrix, std::vector<std::size_t>> hermite(BigMatrix rows, std::size_t n) {
  std::erase_if(rows, all_zero);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    bool found = false;
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      found = true;
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        axpy(rows[i], q, rows[r]);
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (!found) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t p = pivots[i];
    for (std::size_t k = 0; k < i; ++k) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[k][p].get_mpz_t(), rows[i][p].get_mpz_t());
      if (q != 0) axpy(rows[k], q, rows[i]);
    }
  }
  return {std::move(rows), std::move(pivots)};
}

}  // namespace

IntegerLattice IntegerLattice::span(const BigMatrix& vectors, std::size_t ambient_rank) {
  for (const auto& v : vectors)
    if (v.size() != ambient_rank) throw DomainError("dimension mismatch in lattice span");
  IntegerLattice l;
  l.ambient_ = ambient_rank;
  std::tie(l.basis_, l.pivots_) = hermite(vectors, ambient_rank);
  return l;
}

IntegerLattice IntegerLattice::span(const std::vector<IntVector>& vectors, std::size_t ambient_rank) {
  BigMatrix rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != ambient_rank) throw DomainError("dimension mismatch in lattice span");
    rows.push_back(to_big(v));
  }
  return span(rows, ambient_rank);
}

IntegerLattice IntegerLattice::full(std::size_t ambient_rank) {
  std::vector<IntVector> e;
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    IntVector v(ambient_rank, 0);
    v[i] = 1;
    e.push_back(v);
  }
  return span(e, ambient_rank);
}

std::vector<IntVector> IntegerLattice::basis_int64() const {
  std::vector<IntVector> out;
  for (const auto& r : basis_) out.push_back(to_int64(r));
  return out;
}

std::optional<BigVector> IntegerLattice::coordinates(const BigVector& v) const {
  if (v.size() != ambient_) throw DomainError("dimension mismatch in lattice membership");
  BigVector rest = v;
  BigVector coeff(basis_.size());
  std::size_t next = 0;
  for (std::size_t c = 0; c < ambient_; ++c) {
    if (next < pivots_.size() && pivots_[next] == c) {
      if (!mpz_divisible_p(rest[c].get_mpz_t(), basis_[next][c].get_mpz_t())) return std::nullopt;
      coeff[next] = rest[c] / basis_[next][c];
      axpy(rest, coeff[next], basis_[next]);
      ++next;
    } else if (rest[c] != 0) {
      return std::nullopt;
    }
  }
  return coeff;
}

bool IntegerLattice::contains(const BigVector& v) const { return coordinates(v).has_value(); }

bool IntegerLattice::contains(std::span<const std::int64_t> v) const { return contains(to_big(v)); }

IntVector IntegerLattice::reduce(std::span<const std::int64_t> v) const {
  if (v.size() != ambient_) throw DomainError("dimension mismatch in lattice reduction");
  BigVector rest = to_big(v);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::size_t p = pivots_[i];
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), rest[p].get_mpz_t(), basis_[i][p].get_mpz_t());
    if (q != 0) axpy(rest, q, basis_[i]);
  }
  return to_int64(rest);
}

bool lattice_equal(const IntegerLattice& a, const IntegerLattice& b) { return a == b; }

mpz_class big_determinant(const BigMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k].size() != n) throw DomainError("determinant of non-square matrix");
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * prev;
}

LatticeIndex index(const IntegerLattice& sub, const IntegerLattice& sup) {
  if (sub.ambient_rank() != sup.ambient_rank()) throw DomainError("ambient rank mismatch in lattice index");
  BigMatrix coords;
  for (const auto& row : sub.basis()) {
    auto c = sup.coordinates(row);
    if (!c) throw DomainError("lattice index requested for a non-sublattice");
    coords.push_back(std::move(*c));
  }
  if (sub.rank() < sup.rank()) return {true, 0};
  mpz_class d = abs(big_determinant(coords));
  return {false, d};
}

SmithForm smith_normal_form(const BigMatrix& input, std::size_t cols) {
  const std::size_t rows = input.size();
  BigMatrix a = input;
  for (const auto& r : a)
    if (r.size() != cols) throw DomainError("ragged matrix in Smith normal form");
  SmithForm out;
  out.U.assign(rows, BigVector(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) out.U[i][i] = 1;
  out.V.assign(cols, BigVector(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) out.V[i][i] = 1;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(out.U[i], out.U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : out.V) std::swap(r[i], r[j]);
  };
  // row_i -= q * row_j
  auto row_op = [&](std::size_t i, std::size_t j, const mpz_class& q) {
    axpy(a[i], q, a[j]);
    axpy(out.U[i], q, out.U[j]);
  };
  // col_i -= q * col_j
  auto col_op = [&](std::size_t i, std::size_t j, const mpz_class& q) {
    for (auto& r : a) r[i] -= q * r[j];
    for (auto& r : out.V) r[i] -= q * r[j];
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block goes to (t, t).
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) bi = i, bj = j;
    if (bi == rows) break;
    swap_rows(t, bi);
    swap_cols(t, bj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        row_op(i, t, q);
        if (a[i][t] != 0) {
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_op(j, t, q);
        if (a[t][j] != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Divisibility: fold an offending row into row t and go again.
      bool folded = false;
      for (std::size_t i = t + 1; i < rows && !folded; ++i)
        for (std::size_t j = t + 1; j < cols && !folded; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            row_op(t, i, -1);
            folded = true;
          }
      if (!folded) break;
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : out.U[t]) x = -x;
    }
    out.invariants.push_back(a[t][t]);
  }
  return out;
}

std::optional<IntegerSolution> solve_integer_system(const IntMatrix& a, std::span<const std::int64_t> b) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  if (b.size() != n) throw DomainError("right-hand side dimension mismatch");
  BigMatrix big(n);
  for (std::size_t i = 0; i < n; ++i) big[i] = to_big(a.row(i));
  const SmithForm s = smith_normal_form(big, m);
  const std::size_t r = s.invariants.size();

  BigVector c(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i] += s.U[i][j] * b[j];
  BigVector y(m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < r) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), s.invariants[i].get_mpz_t())) return std::nullopt;
      y[i] = c[i] / s.invariants[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution sol;
  BigVector x(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) x[i] += s.V[i][j] * y[j];
  sol.particular = to_int64(x);
  for (std::size_t k = r; k < m; ++k) {
    BigVector col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = s.V[i][k];
    sol.kernel.push_back(to_int64(col));
  }
  return sol;
}

std::optional<AffineSolution> solve_rational_system(const std::vector<RationalVector>& a, const RationalVector& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DomainError("right-hand side dimension mismatch");
  const std::size_t m = n ? a[0].size() : 0;
  std::vector<RationalVector> aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != m) throw DomainError("ragged rational system");
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t p = r;
    while (p < n && aug[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(aug[p], aug[r]);
    const mpq_class inv = 1 / aug[r][c];
    for (auto& x : aug[r]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      const mpq_class f = aug[i][c];
      for (std::size_t j = 0; j <= m; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (aug[i][m] != 0) return std::nullopt;

  AffineSolution sol;
  sol.point.assign(m, 0);
  for (std::size_t i = 0; i < r; ++i) sol.point[pivots[i]] = aug[i][m];
  std::vector<bool> is_pivot(m, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    RationalVector d(m, 0);
    d[f] = 1;
    for (std::size_t i = 0; i < r; ++i) d[pivots[i]] = -aug[i][f];
    sol.directions.push_back(std::move(d));
  }
  return sol;
}

mpz_class connection_index(const RootSystem& rs) {
  BigMatrix a;
  for (std::size_t i = 0; i < rs.rank(); ++i) a.push_back(to_big(rs.cartan().row(i)));
  const SmithForm s = smith_normal_form(a, rs.rank());
  if (s.invariants.size() != rs.rank()) throw InternalError("Cartan matrix is singular");
  mpz_class prod = 1;
  for (const auto& d : s.invariants) prod *= d;
  return prod;
}

std::vector<RootId> smallest_subsystem(const RootSystem& rs, std::span<const RootId> generators) {
  if (generators.empty()) throw DomainError("smallest_subsystem needs a non-empty root set");
  std::set<RootId> seen(generators.begin(), generators.end());
  std::deque<RootId> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    const RootId x = queue.front();
    queue.pop_front();
    for (const RootId g : generators) {
      const RootId y = rs.reflect(g, x);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<RootId> reflection_closure(const RootSystem& rs, std::span<const RootId> generators) {
  std::set<RootId> set(generators.begin(), generators.end());
  for (bool grown = true; grown;) {
    grown = false;
    const std::vector<RootId> snapshot(set.begin(), set.end());
    for (const RootId a : snapshot)
      for (const RootId b : snapshot)
        if (set.insert(rs.reflect(a, b)).second) grown = true;
  }
  return {set.begin(), set.end()};
}

IntegerLattice root_lattice_of(const RootSystem& rs, std::span<const RootId> roots) {
  std::vector<IntVector> v;
  for (auto id : roots) v.push_back(rs.root(id).coords);
  return IntegerLattice::span(v, rs.rank());
}

IntegerLattice coroot_lattice_of(const RootSystem& rs, std::span<const RootId> roots) {
  std::vector<IntVector> v;
  for (auto id : roots) v.push_back(rs.coroot(id).coords);
  return IntegerLattice::span(v, rs.rank());
}

IntegerLattice mixed_root_sublattice(const RootSystem& rs) {
  std::vector<IntVector> gens;
  for (std::uint32_t i = 0; i < rs.num_roots(); ++i) {
    const RootId id{i};
    const auto& c = rs.root(id).coords;
    gens.push_back(rs.is_long(id) ? c : rs.ratio_delta() * c);
  }
  return IntegerLattice::span(gens, rs.rank());
}

IntegerLattice mixed_coroot_sublattice(const RootSystem& rs) {
  std::vector<IntVector> gens;
  for (std::uint32_t i = 0; i < rs.num_roots(); ++i) {
    const RootId id{i};
    const auto& c = rs.coroot(id).coords;
    gens.push_back(rs.is_long(id) ? rs.ratio_delta() * c : c);
  }
  return IntegerLattice::span(gens, rs.rank());
}

}  // namespace affhur
