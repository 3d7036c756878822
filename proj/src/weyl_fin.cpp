#include "affhur/weyl_fin.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "affhur/error.hpp"
#include "affhur/intlattice.hpp"

namespace affhur {

FiniteWeylElement FiniteWeylElement::identity(const RootSystem& rs) {
  FiniteWeylElement w;
  w.m_ = IntMatrix::identity(rs.rank());
  w.inv_ = w.m_;
  w.sym_ = rs.symmetrizer();
  return w;
}

FiniteWeylElement FiniteWeylElement::reflection(const RootSystem& rs, RootId alpha) {
  if (alpha.value >= rs.num_roots()) throw DomainError("reflection of a non-root");
  FiniteWeylElement w;
  w.m_ = rs.reflection_matrix(rs.canonical(alpha));
  w.inv_ = w.m_;
  w.sym_ = rs.symmetrizer();
  return w;
}

FiniteWeylElement FiniteWeylElement::from_matrix(const RootSystem& rs, const IntMatrix& m) {
  if (m.rows() != rs.rank() || m.cols() != rs.rank()) throw DomainError("matrix size does not match the rank");
  for (const auto& r : rs.roots())
    if (!rs.contains(Root{m.apply(r.coords)})) throw DomainError("matrix does not permute the root system");
  FiniteWeylElement w;
  w.m_ = m;
  w.inv_ = unimodular_inverse(m);
  w.sym_ = rs.symmetrizer();
  return w;
}

IntMatrix FiniteWeylElement::coroot_matrix() const {
  const std::size_t n = rank();
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = sym_[i] * m_(i, j) / sym_[j];
  return c;
}

namespace {

IntVector coroot_apply(const IntMatrix& m, const IntVector& sym, std::span<const std::int64_t> lam) {
  const std::size_t n = m.rows();
  if (lam.size() != n) throw DomainError("coroot vector dimension mismatch");
  IntVector out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (lam[j] != 0) acc += sym[i] * m(i, j) / sym[j] * lam[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace

IntVector FiniteWeylElement::act_on_coroot(std::span<const std::int64_t> lam) const {
  return coroot_apply(m_, sym_, lam);
}

IntVector FiniteWeylElement::inverse_act_on_coroot(std::span<const std::int64_t> lam) const {
  return coroot_apply(inv_, sym_, lam);
}

FiniteWeylElement FiniteWeylElement::inverse() const {
  FiniteWeylElement w;
  w.m_ = inv_;
  w.inv_ = m_;
  w.sym_ = sym_;
  return w;
}

std::int64_t FiniteWeylElement::determinant() const { return affhur::determinant(m_); }

bool FiniteWeylElement::is_identity() const { return m_ == IntMatrix::identity(rank()); }

FiniteWeylElement operator*(const FiniteWeylElement& a, const FiniteWeylElement& b) {
  FiniteWeylElement w;
  w.m_ = a.m_ * b.m_;
  w.inv_ = b.inv_ * a.inv_;
  w.sym_ = a.sym_;
  return w;
}

std::size_t absolute_length(const FiniteWeylElement& w) {
  return rational_rank(w.matrix() - IntMatrix::identity(w.rank()));
}

bool leq_T(const FiniteWeylElement& u, const FiniteWeylElement& v) {
  return absolute_length(u) + absolute_length(u.inverse() * v) == absolute_length(v);
}

FiniteWeylGroup::FiniteWeylGroup(const RootSystem& rs) : rs_(&rs) {
  for (std::uint32_t i = 0; i < rs.num_positive(); ++i) refl_.push_back(FiniteWeylElement::reflection(rs, RootId{i}));
}

FiniteWeylElement FiniteWeylGroup::product(std::span<const RootId> tuple) const {
  FiniteWeylElement w = identity();
  for (auto t : tuple) w = w * reflection(t);
  return w;
}

void FiniteWeylGroup::reduced_dfs(const FiniteWeylElement& w, std::size_t len, FiniteTuple& prefix,
                                  std::vector<FiniteTuple>& out) const {
  if (len == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::uint32_t i = 0; i < refl_.size(); ++i) {
    FiniteWeylElement rest = refl_[i] * w;
    if (absolute_length(rest) + 1 != len) continue;
    prefix.push_back(RootId{i});
    reduced_dfs(rest, len - 1, prefix, out);
    prefix.pop_back();
  }
}

std::vector<FiniteTuple> FiniteWeylGroup::reduced_factorizations(const FiniteWeylElement& w) const {
  std::vector<FiniteTuple> out;
  FiniteTuple prefix;
  reduced_dfs(w, absolute_length(w), prefix, out);
  return out;
}

namespace {

// rest = product still to be produced by the remaining slots.
void sequence_dfs(const std::vector<FiniteWeylElement>& refl, const FiniteWeylElement& rest, std::size_t slots,
                  FiniteTuple& prefix, std::vector<FiniteTuple>& out) {
  if (slots == 0) {
    if (rest.is_identity()) out.push_back(prefix);
    return;
  }
  for (std::uint32_t i = 0; i < refl.size(); ++i) {
    FiniteWeylElement next = refl[i] * rest;
    const std::size_t l = absolute_length(next);
    if (l > slots - 1 || (slots - 1 - l) % 2 != 0) continue;
    prefix.push_back(RootId{i});
    sequence_dfs(refl, next, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

bool length_admissible(const FiniteWeylElement& w, std::size_t m) {
  const std::size_t l = absolute_length(w);
  return l <= m && (m - l) % 2 == 0;
}

}  // namespace

std::vector<FiniteTuple> FiniteWeylGroup::reflection_sequences(const FiniteWeylElement& w, std::size_t m) const {
  std::vector<FiniteTuple> out;
  FiniteTuple prefix;
  if (length_admissible(w, m)) sequence_dfs(refl_, w, m, prefix, out);
  return out;
}

std::vector<FiniteTuple> FiniteWeylGroup::reflection_sequences(const FiniteWeylElement& w, std::size_t m,
                                                               RootId first) const {
  std::vector<FiniteTuple> out;
  if (m == 0) return out;
  const FiniteWeylElement rest = reflection(first) * w;
  FiniteTuple prefix{rs_->canonical(first)};
  if (length_admissible(rest, m - 1)) sequence_dfs(refl_, rest, m - 1, prefix, out);
  return out;
}

std::vector<FiniteTuple> FiniteWeylGroup::fac_set(const FiniteWeylElement& w, std::size_t m) const {
  auto all = reflection_sequences(w, m);
  std::erase_if(all, [&](const FiniteTuple& t) { return !generates_w0(t); });
  return all;
}

std::vector<FiniteWeylElement> FiniteWeylGroup::subgroup(std::span<const RootId> gens) const {
  std::vector<FiniteWeylElement> elems{identity()};
  std::unordered_set<FiniteWeylElement, FiniteWeylElementHash> seen{elems.front()};
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (auto g : gens) {
      FiniteWeylElement x = elems[k] * reflection(g);
      if (seen.insert(x).second) elems.push_back(std::move(x));
    }
  return elems;
}

std::vector<FiniteWeylElement> FiniteWeylGroup::elements() const {
  std::vector<RootId> simple;
  for (std::size_t i = 0; i < rank(); ++i) simple.push_back(rs_->simple(i));
  return subgroup(simple);
}

bool FiniteWeylGroup::generates_w0(std::span<const RootId> roots) const {
  if (roots.empty()) return rank() == 0;
  const auto full = IntegerLattice::full(rank());
  return root_lattice_of(*rs_, roots) == full && coroot_lattice_of(*rs_, roots) == full;
}

bool FiniteWeylGroup::is_parabolic(std::span<const RootId> roots) const {
  if (roots.empty()) return true;
  // Roots vanishing on the fixed space are exactly those in the rational span.
  std::vector<IntVector> rows;
  for (auto r : roots) rows.push_back(rs_->root(r).coords);
  const std::size_t base_rank = rational_rank(IntMatrix::from_rows(rows, rank()));
  std::vector<RootId> fixer;
  for (std::uint32_t i = 0; i < rs_->num_roots(); ++i) {
    rows.push_back(rs_->root(RootId{i}).coords);
    if (rational_rank(IntMatrix::from_rows(rows, rank())) == base_rank) fixer.push_back(RootId{i});
    rows.pop_back();
  }
  const auto generated = smallest_subsystem(*rs_, roots);
  return generated == fixer;
}

bool FiniteWeylGroup::is_quasi_coxeter(const FiniteWeylElement& w) const {
  if (absolute_length(w) != rank()) return false;
  for (const auto& f : reduced_factorizations(w))
    if (generates_w0(f)) return true;
  return false;
}

bool FiniteWeylGroup::is_parabolic_quasi_coxeter(const FiniteWeylElement& w) const {
  for (const auto& f : reduced_factorizations(w))
    if (is_parabolic(f)) return true;
  return false;
}

std::vector<IntVector> coroot_orbit(const FiniteWeylGroup& group, const IntVector& lam) {
  const RootSystem& rs = group.roots();
  std::set<IntVector> seen{lam};
  std::deque<IntVector> queue{lam};
  while (!queue.empty()) {
    IntVector v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      IntVector img = group.reflection(rs.simple(i)).act_on_coroot(v);
      if (seen.insert(img).second) queue.push_back(std::move(img));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace affhur
