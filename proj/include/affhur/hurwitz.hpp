#pragma once

// Braid group action on tuples of group elements. The engine is a template
// over a policy type P providing
//   using Element = ...;
//   Element conj(const Element& a, const Element& b) const;      // a b a^{-1}
//   Element conj_inv(const Element& a, const Element& b) const;  // a^{-1} b a
//   std::size_t hash(const Element& a) const;
// and operator== on Element.
//
// Braid words are signed 1-based letters (+i = sigma_i, -i = sigma_i^{-1}),
// applied to a tuple in list order.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "affhur/error.hpp"
#include "affhur/rootsys.hpp"
#include "affhur/weyl_aff.hpp"
#include "affhur/weyl_fin.hpp"

namespace affhur {

using BraidWord = std::vector<int>;

struct SearchLimits {
  std::size_t depth = 12;
  std::size_t nodes = 1'000'000;
};

BraidWord inverse_word(const BraidWord& w);
BraidWord concat(BraidWord a, const BraidWord& b);

template <class P>
using TupleOf = std::vector<typename P::Element>;

template <class P>
struct TupleHash {
  const P* policy;
  std::size_t operator()(const TupleOf<P>& t) const {
    std::size_t h = t.size();
    for (const auto& e : t) h ^= policy->hash(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

template <class P>
void apply_move_inplace(const P& p, TupleOf<P>& t, int letter) {
  const int i = letter > 0 ? letter : -letter;
  if (i < 1 || static_cast<std::size_t>(i) >= t.size()) throw DomainError("braid letter out of range");
  auto& a = t[i - 1];
  auto& b = t[i];
  if (letter > 0) {
    auto x = p.conj(a, b);
    b = std::move(a);
    a = std::move(x);
  } else {
    auto y = p.conj_inv(b, a);
    a = std::move(b);
    b = std::move(y);
  }
}

template <class P>
TupleOf<P> apply_move(const P& p, TupleOf<P> t, std::size_t i, bool inverse) {
  apply_move_inplace(p, t, inverse ? -static_cast<int>(i) : static_cast<int>(i));
  return t;
}

template <class P>
TupleOf<P> apply_braid(const P& p, TupleOf<P> t, const BraidWord& w) {
  for (int letter : w) apply_move_inplace(p, t, letter);
  return t;
}

// Letters in exploration order: sigma_i before sigma_i^{-1}, ascending i.
inline std::vector<int> braid_letters(std::size_t m) {
  std::vector<int> out;
  for (int i = 1; static_cast<std::size_t>(i) < m; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

template <class P>
struct OrbitResult {
  std::vector<TupleOf<P>> tuples;           // BFS order, tuples[0] is the start
  std::vector<std::size_t> parent;          // parent index, self for the root
  std::vector<int> letter;                  // letter applied to parent, 0 for the root
  bool exhausted = false;

  BraidWord word_to(std::size_t idx) const {
    BraidWord w;
    while (parent[idx] != idx) {
      w.push_back(letter[idx]);
      idx = parent[idx];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
};

template <class P>
OrbitResult<P> orbit(const P& p, const TupleOf<P>& start, const SearchLimits& limits) {
  OrbitResult<P> r;
  std::unordered_map<TupleOf<P>, std::size_t, TupleHash<P>> index(16, TupleHash<P>{&p});
  std::vector<std::size_t> depth{0};
  r.tuples.push_back(start);
  r.parent.push_back(0);
  r.letter.push_back(0);
  index.emplace(start, 0);
  const auto letters = braid_letters(start.size());
  bool truncated = false;
  for (std::size_t k = 0; k < r.tuples.size(); ++k) {
    if (depth[k] >= limits.depth) {
      truncated = true;
      continue;
    }
    for (int l : letters) {
      TupleOf<P> next = r.tuples[k];
      apply_move_inplace(p, next, l);
      if (index.contains(next)) continue;
      if (r.tuples.size() >= limits.nodes) {
        truncated = true;
        break;
      }
      index.emplace(next, r.tuples.size());
      r.tuples.push_back(std::move(next));
      r.parent.push_back(k);
      r.letter.push_back(l);
      depth.push_back(depth[k] + 1);
    }
  }
  r.exhausted = !truncated;
  return r;
}

// BFS from t until pred holds. Returns the word, or nullopt if the limits are
// hit first (exhausted reports whether the whole orbit was seen).
template <class P>
std::optional<BraidWord> search_shape(const P& p, const TupleOf<P>& start,
                                      const std::function<bool(const TupleOf<P>&)>& pred,
                                      const SearchLimits& limits, bool* exhausted = nullptr) {
  std::unordered_map<TupleOf<P>, std::pair<TupleOf<P>, int>, TupleHash<P>> parent(16, TupleHash<P>{&p});
  std::deque<std::pair<TupleOf<P>, std::size_t>> queue;
  auto trace = [&](TupleOf<P> t) {
    BraidWord w;
    for (;;) {
      const auto& pr = parent.at(t);
      if (pr.second == 0) break;
      w.push_back(pr.second);
      t = pr.first;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  if (exhausted) *exhausted = false;
  parent.emplace(start, std::make_pair(start, 0));
  if (pred(start)) return BraidWord{};
  queue.emplace_back(start, 0);
  const auto letters = braid_letters(start.size());
  bool truncated = false;
  while (!queue.empty()) {
    auto [t, d] = std::move(queue.front());
    queue.pop_front();
    if (d >= limits.depth) {
      truncated = true;
      continue;
    }
    for (int l : letters) {
      TupleOf<P> next = t;
      apply_move_inplace(p, next, l);
      if (parent.contains(next)) continue;
      if (parent.size() >= limits.nodes) {
        truncated = true;
        continue;
      }
      parent.emplace(next, std::make_pair(t, l));
      if (pred(next)) return trace(next);
      queue.emplace_back(std::move(next), d + 1);
    }
  }
  if (exhausted) *exhausted = !truncated;
  return std::nullopt;
}

// Bidirectional BFS. A returned word w satisfies apply_braid(t1, w) == t2; it is
// checked before returning. nullopt means "not found within limits".
template <class P>
std::optional<BraidWord> connect(const P& p, const TupleOf<P>& t1, const TupleOf<P>& t2,
                                 const SearchLimits& limits) {
  if (t1.size() != t2.size()) throw DomainError("tuples of different length");
  if (t1 == t2) return BraidWord{};
  using Map = std::unordered_map<TupleOf<P>, std::pair<TupleOf<P>, int>, TupleHash<P>>;
  Map seen_a(16, TupleHash<P>{&p}), seen_b(16, TupleHash<P>{&p});
  seen_a.emplace(t1, std::make_pair(t1, 0));
  seen_b.emplace(t2, std::make_pair(t2, 0));
  std::vector<TupleOf<P>> front_a{t1}, front_b{t2};
  std::size_t depth_a = 0, depth_b = 0;
  const auto letters = braid_letters(t1.size());

  // Word from the root of `seen` to t, as letters applied from that root.
  auto path = [](const Map& seen, TupleOf<P> t) {
    BraidWord w;
    for (;;) {
      const auto& pr = seen.at(t);
      if (pr.second == 0) break;
      w.push_back(pr.second);
      t = pr.first;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  while (!front_a.empty() && !front_b.empty() && depth_a + depth_b < limits.depth) {
    const bool grow_a = front_a.size() <= front_b.size();
    Map& seen = grow_a ? seen_a : seen_b;
    const Map& other = grow_a ? seen_b : seen_a;
    auto& front = grow_a ? front_a : front_b;
    std::vector<TupleOf<P>> next_front;
    for (const auto& t : front) {
      for (int l : letters) {
        TupleOf<P> next = t;
        apply_move_inplace(p, next, l);
        if (seen.contains(next)) continue;
        if (seen_a.size() + seen_b.size() >= limits.nodes) return std::nullopt;
        seen.emplace(next, std::make_pair(t, l));
        if (other.contains(next)) {
          BraidWord wa = path(seen_a, next);
          BraidWord wb = path(seen_b, next);
          BraidWord w = concat(std::move(wa), inverse_word(wb));
          if (!(apply_braid(p, t1, w) == t2)) throw InternalError("connect produced an invalid braid word");
          return w;
        }
        next_front.push_back(std::move(next));
      }
    }
    front = std::move(next_front);
    (grow_a ? depth_a : depth_b) += 1;
  }
  return std::nullopt;
}

// Finite reflections, stored as positive root ids.
struct FiniteReflectionPolicy {
  using Element = RootId;
  const RootSystem* rs;
  RootId conj(RootId a, RootId b) const { return rs->canonical(rs->reflect(a, b)); }
  RootId conj_inv(RootId a, RootId b) const { return conj(a, b); }
  std::size_t hash(RootId a) const { return a.value; }
};

// Affine reflections via the closed conjugation formula.
struct AffineReflectionPolicy {
  using Element = AffineReflection;
  const RootSystem* rs;
  AffineReflection conj(const AffineReflection& a, const AffineReflection& b) const {
    return aff_conjugate_reflection(*rs, a, b);
  }
  AffineReflection conj_inv(const AffineReflection& a, const AffineReflection& b) const { return conj(a, b); }
  std::size_t hash(const AffineReflection& a) const {
    return std::hash<std::int64_t>{}(a.level) * 31 + a.root.value;
  }
};

// Arbitrary group elements with operator*, inverse() and hash().
template <class E>
struct ElementPolicy {
  using Element = E;
  E conj(const E& a, const E& b) const { return a * b * a.inverse(); }
  E conj_inv(const E& a, const E& b) const { return a.inverse() * b * a; }
  std::size_t hash(const E& a) const { return a.hash(); }
};

// Entrywise projection of an affine tuple.
FiniteTuple project_tuple(const AffineTuple& t);

// Search for a braid taking a finite tuple to one whose last two entries are
// equal. nullopt when no such tuple is reachable within limits.
std::optional<BraidWord> lr_normalize(const RootSystem& rs, const FiniteTuple& t, const SearchLimits& limits,
                                      bool* exhausted = nullptr);

}  // namespace affhur
