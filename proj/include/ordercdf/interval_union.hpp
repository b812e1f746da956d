#pragma once

// The algebra of finite unions of intervals with extended endpoints.
//
// An IntervalUnion is kept in canonical form: canonical intervals, sorted,
// pairwise disjoint and non-adjacent. Two unions describe the same subset of
// X exactly when their representations compare equal, so set equality is
// plain operator==.

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "ordercdf/interval.hpp"
#include "ordercdf/order.hpp"

namespace ordercdf {

template <class P>
class IntervalUnion {
 public:
  IntervalUnion() = default;

  const std::vector<Interval<P>>& intervals() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }
  std::size_t size() const noexcept { return pieces_.size(); }

  bool operator==(const IntervalUnion&) const = default;

  template <OrderedSpace S>
  friend IntervalUnion<typename S::point_type> normalize(const S&,
                                                         std::vector<Interval<typename S::point_type>>);

 private:
  explicit IntervalUnion(std::vector<Interval<P>> pieces) : pieces_(std::move(pieces)) {}

  std::vector<Interval<P>> pieces_;
};

template <OrderedSpace S>
using UnionOf = IntervalUnion<typename S::point_type>;

namespace detail {

// True when a ∪ b (with a.lo <= b.lo) is convex.
template <OrderedSpace S>
bool mergeable(const S& space, const IntervalOf<S>& a, const IntervalOf<S>& b) {
  const auto c = compare_extended(space, a.hi, b.lo);
  if (c > 0) return true;
  if (c == 0) return a.hi_closed || b.lo_closed;
  if (!a.hi_closed || !b.lo_closed || !a.hi.is_point() || !b.lo.is_point()) return false;
  const auto next = space.successor(a.hi.point());
  return next && space.compare(*next, b.lo.point()) == 0;
}

}  // namespace detail

// Canonical union of arbitrary (possibly empty, overlapping) intervals.
template <OrderedSpace S>
UnionOf<S> normalize(const S& space, std::vector<IntervalOf<S>> raw) {
  std::vector<IntervalOf<S>> items;
  items.reserve(raw.size());
  for (auto& iv : raw) {
    if (auto c = canonical(space, std::move(iv))) items.push_back(std::move(*c));
  }
  std::sort(items.begin(), items.end(), [&](const IntervalOf<S>& a, const IntervalOf<S>& b) {
    const auto c = compare_extended(space, a.lo, b.lo);
    if (c != 0) return c < 0;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<IntervalOf<S>> out;
  for (auto& iv : items) {
    if (!out.empty() && detail::mergeable(space, out.back(), iv)) {
      auto& cur = out.back();
      const auto c = compare_extended(space, cur.hi, iv.hi);
      if (c < 0) {
        cur.hi = iv.hi;
        cur.hi_closed = iv.hi_closed;
      } else if (c == 0) {
        cur.hi_closed = cur.hi_closed || iv.hi_closed;
      }
    } else {
      out.push_back(std::move(iv));
    }
  }
  return UnionOf<S>(std::move(out));
}

template <OrderedSpace S>
UnionOf<S> make_union(const S& space, std::initializer_list<IntervalOf<S>> ivs) {
  return normalize(space, std::vector<IntervalOf<S>>(ivs));
}

template <OrderedSpace S>
UnionOf<S> full_space(const S& space) {
  return normalize(space, {IntervalOf<S>::everything()});
}

template <OrderedSpace S>
UnionOf<S> points_union(const S& space, const std::vector<typename S::point_type>& pts) {
  std::vector<IntervalOf<S>> ivs;
  for (const auto& p : pts) ivs.push_back(IntervalOf<S>::singleton(p));
  return normalize(space, std::move(ivs));
}

template <OrderedSpace S>
UnionOf<S> unite(const S& space, const UnionOf<S>& u, const UnionOf<S>& v) {
  std::vector<IntervalOf<S>> all(u.intervals());
  all.insert(all.end(), v.intervals().begin(), v.intervals().end());
  return normalize(space, std::move(all));
}

template <OrderedSpace S>
UnionOf<S> intersect(const S& space, const UnionOf<S>& u, const UnionOf<S>& v) {
  std::vector<IntervalOf<S>> out;
  const auto& a = u.intervals();
  const auto& b = v.intervals();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    out.push_back(meet(space, a[i], b[j]));
    // advance whichever ends first
    const auto c = compare_extended(space, a[i].hi, b[j].hi);
    if (c < 0 || (c == 0 && !a[i].hi_closed)) {
      ++i;
    } else if (c > 0 || (c == 0 && !b[j].hi_closed)) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return normalize(space, std::move(out));
}

// X \ u: the gaps ]−∞,a₁| ∪ |b₁,a₂| ∪ ... ∪ |bₙ,+∞[ with every bracket
// flipped at the shared endpoints.
template <OrderedSpace S>
UnionOf<S> complement(const S& space, const UnionOf<S>& u) {
  using E = ExtPoint<S>;
  std::vector<IntervalOf<S>> gaps;
  E prev = E::neg_inf();
  bool prev_closed = false;  // closure of the gap's left bracket
  for (const auto& iv : u.intervals()) {
    if (!iv.lo.is_neg_inf()) gaps.push_back({prev, iv.lo, prev_closed, !iv.lo_closed});
    prev = iv.hi;
    prev_closed = !iv.hi_closed;
  }
  if (!prev.is_pos_inf()) gaps.push_back({prev, E::pos_inf(), prev_closed, false});
  return normalize(space, std::move(gaps));
}

template <OrderedSpace S>
UnionOf<S> difference(const S& space, const UnionOf<S>& u, const UnionOf<S>& v) {
  return intersect(space, u, complement(space, v));
}

template <OrderedSpace S>
bool membership(const S& space, const typename S::point_type& x, const UnionOf<S>& u) {
  require_member(space, x);
  const auto& ivs = u.intervals();
  // first interval whose upper end is not below x
  auto it = std::partition_point(ivs.begin(), ivs.end(), [&](const IntervalOf<S>& iv) {
    const auto c = compare_extended(space, iv.hi, ExtPoint<S>(x));
    return c < 0 || (c == 0 && !iv.hi_closed);
  });
  return it != ivs.end() && interval_contains(space, *it, x);
}

template <OrderedSpace S>
bool is_subset(const S& space, const UnionOf<S>& u, const UnionOf<S>& v) {
  return intersect(space, u, v) == u;
}

// Maximal convex pieces of u. In canonical form these are exactly its
// intervals.
template <OrderedSpace S>
std::vector<UnionOf<S>> convex_components(const S& space, const UnionOf<S>& u) {
  std::vector<UnionOf<S>> out;
  for (const auto& iv : u.intervals()) out.push_back(normalize(space, {iv}));
  return out;
}

// Empty set: +∞. nullopt when the infimum does not exist in X.
template <OrderedSpace S>
Bound<S> infimum(const S& space, const UnionOf<S>& u) {
  if (u.empty()) return ExtPoint<S>::pos_inf();
  return infimum(space, u.intervals().front());
}

// Empty set: −∞.
template <OrderedSpace S>
Bound<S> supremum(const S& space, const UnionOf<S>& u) {
  if (u.empty()) return ExtPoint<S>::neg_inf();
  return supremum(space, u.intervals().back());
}

}  // namespace ordercdf
