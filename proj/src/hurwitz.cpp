#include "affhur/hurwitz.hpp"

namespace affhur {

BraidWord inverse_word(const BraidWord& w) {
  BraidWord out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

BraidWord concat(BraidWord a, const BraidWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

FiniteTuple project_tuple(const AffineTuple& t) {
  FiniteTuple out;
  out.reserve(t.size());
  for (const auto& r : t) out.push_back(r.root);
  return out;
}

std::optional<BraidWord> lr_normalize(const RootSystem& rs, const FiniteTuple& t, const SearchLimits& limits,
                                      bool* exhausted) {
  if (t.size() < 2) throw DomainError("normalization needs at least two entries");
  const FiniteReflectionPolicy p{&rs};
  const std::function<bool(const FiniteTuple&)> shape = [](const FiniteTuple& x) {
    return x[x.size() - 1] == x[x.size() - 2];
  };
  return search_shape(p, t, shape, limits, exhausted);
}

}  // namespace affhur
