#include "affhur/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "affhur/error.hpp"

namespace affhur {

std::string CartanType::name() const {
  return std::string(1, static_cast<char>(family)) + std::to_string(rank);
}

CartanType parse_cartan_type(std::string_view text) {
  if (text.size() < 2) throw ParseError("invalid root system type '" + std::string(text) + "'");
  const char f = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  int rank = 0;
  for (char c : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || rank > 1000)
      throw ParseError("invalid root system type '" + std::string(text) + "'");
    rank = rank * 10 + (c - '0');
  }
  const std::string allowed = "ABCDEFG";
  if (allowed.find(f) == std::string::npos)
    throw ParseError("unsupported root system family '" + std::string(1, f) +
                     "' (only crystallographic types A-G)");
  CartanType t{static_cast<Family>(f), rank};
  cartan_matrix(t);  // validates the pair
  return t;
}

IntMatrix cartan_matrix(const CartanType& type) {
  const int n = type.rank;
  auto bad = [&] { return ParseError("invalid root system type " + type.name()); };
  bool ok = false;
  switch (type.family) {
    case Family::A: ok = n >= 1; break;
    case Family::B: ok = n >= 2; break;
    case Family::C: ok = n >= 2; break;
    case Family::D: ok = n >= 4; break;
    case Family::E: ok = n >= 6 && n <= 8; break;
    case Family::F: ok = n == 4; break;
    case Family::G: ok = n == 2; break;
  }
  if (!ok) throw bad();

  const auto un = static_cast<std::size_t>(n);
  IntMatrix a(un, un);
  for (std::size_t i = 0; i < un; ++i) a(i, i) = 2;
  auto link = [&](std::size_t i, std::size_t j) { a(i, j) = a(j, i) = -1; };

  switch (type.family) {
    case Family::A:
      for (std::size_t i = 0; i + 1 < un; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (std::size_t i = 0; i + 1 < un; ++i) link(i, i + 1);
      a(un - 1, un - 2) = -2;  // alpha_n short
      break;
    case Family::C:
      for (std::size_t i = 0; i + 1 < un; ++i) link(i, i + 1);
      a(un - 2, un - 1) = -2;  // alpha_n long
      break;
    case Family::D:
      for (std::size_t i = 0; i + 2 < un; ++i) link(i, i + 1);
      link(un - 3, un - 1);
      break;
    case Family::E:
      // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
      link(0, 2);
      link(1, 3);
      for (std::size_t i = 2; i + 1 < un; ++i) link(i, i + 1);
      break;
    case Family::F:
      link(0, 1);
      link(1, 2);
      link(2, 3);
      a(2, 1) = -2;  // alpha_1, alpha_2 long; alpha_3, alpha_4 short
      break;
    case Family::G:
      a(0, 1) = -3;  // alpha_1 short, alpha_2 long
      a(1, 0) = -1;
      break;
  }
  return a;
}

bool is_positive_vector(std::span<const std::int64_t> v) {
  for (auto x : v)
    if (x != 0) return x > 0;
  return false;
}

std::vector<IntVector> close_root_set(const IntMatrix& cartan) {
  const std::size_t n = cartan.rows();
  std::set<IntVector> seen;
  std::deque<IntVector> queue;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    IntVector beta = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t c = 0;
      for (std::size_t j = 0; j < n; ++j) c += cartan(i, j) * beta[j];
      IntVector img = beta;
      img[i] -= c;
      if (seen.insert(img).second) queue.push_back(std::move(img));
    }
  }
  return {seen.begin(), seen.end()};
}

namespace {

IntVector compute_symmetrizer(const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntVector d(n, 0);
  d[0] = 6;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || a(i, j) == 0 || d[j] != 0) continue;
      // d_i a_ij = d_j a_ji
      const std::int64_t num = d[i] * a(i, j);
      if (num % a(j, i) != 0) throw InternalError("Cartan matrix is not symmetrizable over the integers");
      d[j] = num / a(j, i);
      queue.push_back(j);
    }
  }
  std::int64_t g = 0;
  for (auto x : d) {
    if (x <= 0) throw InternalError("disconnected Dynkin diagram");
    g = std::gcd(g, x);
  }
  for (auto& x : d) x /= g;
  return d;
}

std::int64_t height(const IntVector& v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }

}  // namespace

RootSystem::RootSystem(Family family, int rank) : type_{family, rank} {
  cartan_ = cartan_matrix(type_);
  rank_ = cartan_.rows();
  symmetrizer_ = compute_symmetrizer(cartan_);
  gram_ = IntMatrix(rank_, rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) gram_(i, j) = symmetrizer_[i] * cartan_(i, j);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      if (gram_(i, j) != gram_(j, i)) throw InternalError("symmetrized Cartan matrix is not symmetric");

  std::vector<IntVector> all = close_root_set(cartan_);
  std::vector<IntVector> pos;
  for (auto& v : all)
    if (is_positive_vector(v)) pos.push_back(v);
  if (pos.size() * 2 != all.size()) throw InternalError("root set is not closed under negation");
  // Height first, then lexicographically descending, so simple root i gets index i.
  std::sort(pos.begin(), pos.end(), [](const IntVector& x, const IntVector& y) {
    const auto hx = height(x), hy = height(y);
    return hx != hy ? hx < hy : x > y;
  });
  const std::size_t npos = pos.size();
  roots_.reserve(2 * npos);
  for (auto& v : pos) roots_.push_back(Root{v});
  for (auto& v : pos) roots_.push_back(Root{-v});

  for (std::uint32_t i = 0; i < roots_.size(); ++i) index_[hash_range(roots_[i].coords)].push_back(i);
  for (std::size_t i = 0; i < rank_; ++i) simple_.push_back(RootId{static_cast<std::uint32_t>(i)});

  std::int64_t min_norm = 0, max_norm = 0;
  for (const auto& r : roots_) {
    const std::int64_t nr = inner(r, r);
    norm_.push_back(nr);
    min_norm = min_norm == 0 ? nr : std::min(min_norm, nr);
    max_norm = std::max(max_norm, nr);
  }
  if (min_norm != 2) throw InternalError("short roots must have squared length 2");
  if (max_norm % min_norm != 0) throw InternalError("root length ratio is not integral");
  ratio_delta_ = max_norm / min_norm;
  for (auto nr : norm_) {
    if (nr != min_norm && nr != max_norm) throw InternalError("more than two root lengths");
    long_.push_back(ratio_delta_ == 1 || nr == max_norm);
  }

  for (const auto& r : roots_) coroots_.push_back(coroot(r));

  // Highest root: the unique positive root with no simple root above it.
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t i = 0; i < npos; ++i) {
    bool top = true;
    for (std::size_t j = 0; j < rank_ && top; ++j) {
      IntVector up = roots_[i].coords;
      up[j] += 1;
      if (contains(Root{up})) top = false;
    }
    if (top) maximal.push_back(i);
  }
  if (maximal.size() != 1) throw InternalError("highest root is not unique");
  highest_ = RootId{maximal.front()};

  const std::size_t nr = roots_.size();
  cartan_int_.resize(nr * nr);
  reflect_.resize(nr * nr);
  for (std::uint32_t a = 0; a < nr; ++a)
    for (std::uint32_t b = 0; b < nr; ++b) {
      const std::int64_t c = pairing(coroots_[a], roots_[b]);
      cartan_int_[a * nr + b] = c;
      IntVector img = roots_[b].coords;
      for (std::size_t k = 0; k < rank_; ++k) img[k] -= c * roots_[a].coords[k];
      reflect_[a * nr + b] = id_of(Root{std::move(img)});
    }
}

RootId RootSystem::negate(RootId id) const {
  const auto n = static_cast<std::uint32_t>(num_positive());
  return RootId{id.value < n ? id.value + n : id.value - n};
}

std::optional<RootId> RootSystem::find(const Root& r) const {
  if (r.coords.size() != rank_) return std::nullopt;
  auto it = index_.find(hash_range(r.coords));
  if (it == index_.end()) return std::nullopt;
  for (auto i : it->second)
    if (roots_[i] == r) return RootId{i};
  return std::nullopt;
}

bool RootSystem::contains(const Root& r) const { return find(r).has_value(); }

RootId RootSystem::id_of(const Root& r) const {
  if (auto id = find(r)) return *id;
  std::ostringstream os;
  os << "vector (";
  for (std::size_t i = 0; i < r.coords.size(); ++i) os << (i ? "," : "") << r.coords[i];
  os << ") is not a root of " << type_.name();
  throw DomainError(os.str());
}

CorootVector RootSystem::coroot(const Root& alpha) const {
  if (alpha.coords.size() != rank_) throw DomainError("rank mismatch in coroot");
  const std::int64_t nrm = inner(alpha, alpha);
  if (nrm <= 0 || nrm % 2 != 0) throw DomainError("coroot of a non-root vector");
  const std::int64_t da = nrm / 2;
  CorootVector v{IntVector(rank_)};
  for (std::size_t i = 0; i < rank_; ++i) {
    const std::int64_t x = alpha.coords[i] * symmetrizer_[i];
    if (x % da != 0) throw DomainError("coroot is not integral; input is not a root");
    v.coords[i] = x / da;
  }
  return v;
}

std::int64_t RootSystem::pairing(std::span<const std::int64_t> lam, std::span<const std::int64_t> alpha) const {
  if (lam.size() != rank_ || alpha.size() != rank_) throw DomainError("rank mismatch in pairing");
  // (alpha_i^vee | alpha_j) = a_ij
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (lam[i] == 0) continue;
    for (std::size_t j = 0; j < rank_; ++j) acc += lam[i] * cartan_(i, j) * alpha[j];
  }
  return acc;
}

std::int64_t RootSystem::pairing(const CorootVector& lam, const Root& alpha) const {
  return pairing(lam.coords, alpha.coords);
}

std::int64_t RootSystem::inner(const Root& alpha, const Root& beta) const {
  if (alpha.coords.size() != rank_ || beta.coords.size() != rank_) throw DomainError("rank mismatch in inner product");
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) acc += alpha.coords[i] * gram_(i, j) * beta.coords[j];
  return acc;
}

Root RootSystem::reflect(const Root& alpha, const Root& beta) const {
  const RootId a = id_of(alpha);
  const RootId b = id_of(beta);
  return root(reflect(a, b));
}

IntMatrix RootSystem::reflection_matrix(RootId alpha) const {
  // s_alpha(e_j) = e_j - <alpha_j, alpha^vee> alpha
  const auto& c = root(alpha).coords;
  const auto& cv = coroot(alpha).coords;
  IntMatrix m = IntMatrix::identity(rank_);
  for (std::size_t j = 0; j < rank_; ++j) {
    std::int64_t p = 0;
    for (std::size_t i = 0; i < rank_; ++i) p += cv[i] * cartan_(i, j);
    for (std::size_t i = 0; i < rank_; ++i) m(i, j) -= p * c[i];
  }
  return m;
}

IntMatrix RootSystem::coroot_reflection_matrix(RootId alpha) const {
  // s_alpha(lam) = lam - (lam | alpha) alpha^vee
  const auto& c = root(alpha).coords;
  const auto& cv = coroot(alpha).coords;
  IntMatrix m = IntMatrix::identity(rank_);
  for (std::size_t j = 0; j < rank_; ++j) {
    std::int64_t p = 0;
    for (std::size_t k = 0; k < rank_; ++k) p += cartan_(j, k) * c[k];
    for (std::size_t i = 0; i < rank_; ++i) m(i, j) -= p * cv[i];
  }
  return m;
}

}  // namespace affhur
