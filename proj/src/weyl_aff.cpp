#include "affhur/weyl_aff.hpp"

#include "affhur/error.hpp"

namespace affhur {

AffineReflection make_reflection(const RootSystem& rs, RootId alpha, std::int64_t level) {
  if (alpha.value >= rs.num_roots()) throw DomainError("affine reflection of a non-root");
  if (rs.is_positive(alpha)) return {alpha, level};
  return {rs.negate(alpha), -level};
}

AffineWeylElement::AffineWeylElement(FiniteWeylElement finite, IntVector translation)
    : finite_(std::move(finite)), lambda_(std::move(translation)) {
  if (lambda_.size() != finite_.rank()) throw DomainError("translation dimension mismatch");
}

AffineWeylElement AffineWeylElement::identity(const RootSystem& rs) {
  return {FiniteWeylElement::identity(rs), IntVector(rs.rank(), 0)};
}

AffineWeylElement AffineWeylElement::translation(const RootSystem& rs, IntVector lam) {
  return {FiniteWeylElement::identity(rs), std::move(lam)};
}

AffineWeylElement AffineWeylElement::reflection(const RootSystem& rs, const AffineReflection& r) {
  return {FiniteWeylElement::reflection(rs, r.root), -r.level * rs.coroot(r.root).coords};
}

AffineWeylElement AffineWeylElement::inverse() const {
  return {finite_.inverse(), -finite_.act_on_coroot(lambda_)};
}

IntVector AffineWeylElement::act_on_coroot(std::span<const std::int64_t> v) const {
  IntVector shifted(v.begin(), v.end());
  return finite_.act_on_coroot(shifted + lambda_);
}

// (u, lam)(v, mu) = (uv, v^{-1}(lam) + mu)
AffineWeylElement operator*(const AffineWeylElement& x, const AffineWeylElement& y) {
  return {x.finite_ * y.finite_, y.finite_.inverse_act_on_coroot(x.lambda_) + y.lambda_};
}

AffineReflection aff_conjugate_reflection(const RootSystem& rs, const AffineReflection& a,
                                          const AffineReflection& b) {
  return make_reflection(rs, rs.reflect(a.root, b.root), b.level - a.level * rs.cartan_integer(b.root, a.root));
}

AffineWeylElement product(const RootSystem& rs, std::span<const AffineReflection> refs) {
  AffineWeylElement w = AffineWeylElement::identity(rs);
  for (const auto& r : refs) w = w * AffineWeylElement::reflection(rs, r);
  return w;
}

std::pair<FiniteWeylElement, IntVector> translation_part_of_product(const RootSystem& rs,
                                                                     std::span<const AffineReflection> refs) {
  if (refs.empty()) throw DomainError("empty reflection sequence");
  FiniteWeylElement suffix = FiniteWeylElement::identity(rs);
  IntVector lam(rs.rank(), 0);
  for (std::size_t i = refs.size(); i-- > 0;) {
    const auto beta = suffix.act_on_coroot(rs.coroot(refs[i].root).coords);
    lam = lam + (-refs[i].level) * beta;
    suffix = suffix * FiniteWeylElement::reflection(rs, refs[i].root);
  }
  FiniteWeylElement fin = suffix.inverse();  // suffix = s_m ... s_1
  const AffineWeylElement check = product(rs, refs);
  if (!(check.finite_part() == fin) || check.translation() != lam)
    throw InternalError("closed-form translation disagrees with the product");
  return {std::move(fin), std::move(lam)};
}

namespace {

mpq_class rational_pairing(const RootSystem& rs, const RationalVector& lam, const Root& alpha) {
  const auto& a = rs.cartan();
  mpq_class acc = 0;
  for (std::size_t j = 0; j < rs.rank(); ++j)
    for (std::size_t i = 0; i < rs.rank(); ++i)
      if (alpha.coords[i] != 0) acc += lam[j] * a(j, i) * alpha.coords[i];
  return acc;
}

}  // namespace

AffineReflection coweight_conjugate(const RootSystem& rs, const RationalVector& lam, const AffineReflection& r) {
  if (lam.size() != rs.rank()) throw DomainError("coweight dimension mismatch");
  for (std::size_t i = 0; i < rs.rank(); ++i)
    if (rational_pairing(rs, lam, rs.root(rs.simple(i))).get_den() != 1)
      throw DomainError("vector does not pair integrally with the roots");
  const mpq_class shift = rational_pairing(rs, lam, rs.root(r.root));
  return {r.root, r.level + shift.get_num().get_si()};
}

std::optional<AffineReflection> recognize_reflection(const RootSystem& rs, const AffineWeylElement& x) {
  const auto& m = x.finite_part().matrix();
  for (std::uint32_t i = 0; i < rs.num_positive(); ++i) {
    const RootId a{i};
    if (!(rs.reflection_matrix(a) == m)) continue;
    const auto& c = rs.coroot(a).coords;
    const auto& lam = x.translation();
    std::size_t p = 0;
    while (c[p] == 0) ++p;
    if (lam[p] % c[p] != 0) return std::nullopt;
    const std::int64_t q = lam[p] / c[p];
    if (q * c != lam) return std::nullopt;
    return AffineReflection{a, -q};
  }
  return std::nullopt;
}

std::optional<AffineSolution> fixed_affine_subspace(const RootSystem& rs, std::span<const AffineReflection> gens) {
  const std::size_t n = rs.rank();
  std::vector<RationalVector> rows;
  RationalVector rhs;
  for (const auto& g : gens) {
    const auto col = rs.cartan().apply(rs.root(g.root).coords);
    RationalVector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = static_cast<long>(col[j]);
    rows.push_back(std::move(row));
    rhs.emplace_back(static_cast<long>(g.level));
  }
  if (rows.empty()) {
    AffineSolution all;
    all.point.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      RationalVector e(n, 0);
      e[j] = 1;
      all.directions.push_back(std::move(e));
    }
    return all;
  }
  return solve_rational_system(rows, rhs);
}

}  // namespace affhur
