#pragma once

#include <optional>
#include <utility>

#include "ordercdf/errors.hpp"
#include "ordercdf/order.hpp"

namespace ordercdf {

// |lo, hi| with extended endpoints. The two closure flags encode the bracket
// on each side; infinite endpoints are always open.
template <class P>
struct Interval {
  ExtendedPoint<P> lo = ExtendedPoint<P>::neg_inf();
  ExtendedPoint<P> hi = ExtendedPoint<P>::pos_inf();
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval closed(P a, P b) { return {std::move(a), std::move(b), true, true}; }
  static Interval open(ExtendedPoint<P> a, ExtendedPoint<P> b) {
    return {std::move(a), std::move(b), false, false};
  }
  // ]a, b]
  static Interval left_open(ExtendedPoint<P> a, P b) { return {std::move(a), std::move(b), false, true}; }
  // [a, b[
  static Interval right_open(P a, ExtendedPoint<P> b) { return {std::move(a), std::move(b), true, false}; }
  static Interval singleton(const P& x) { return closed(x, x); }
  static Interval everything() { return {}; }
  // (≤ x) and (< x)
  static Interval at_most(P x) { return {ExtendedPoint<P>::neg_inf(), std::move(x), false, true}; }
  static Interval below(P x) { return {ExtendedPoint<P>::neg_inf(), std::move(x), false, false}; }
  static Interval at_least(P x) { return {std::move(x), ExtendedPoint<P>::pos_inf(), true, false}; }
  static Interval above(P x) { return {std::move(x), ExtendedPoint<P>::pos_inf(), false, false}; }

  bool operator==(const Interval&) const = default;
};

template <OrderedSpace S>
using IntervalOf = Interval<typename S::point_type>;

// Canonical form of an interval, or nullopt when it is empty.
//  * finite endpoints must be members of X;
//  * −∞/+∞ are replaced by min X / max X when those exist;
//  * an open endpoint with an immediate neighbour inside is replaced by that
//    neighbour, closed (so discrete pieces always carry closed brackets).
// Equal convex sets get identical representations.
template <OrderedSpace S>
std::optional<IntervalOf<S>> canonical(const S& space, IntervalOf<S> iv) {
  using E = ExtPoint<S>;
  if (iv.lo.is_pos_inf() || iv.hi.is_neg_inf()) return std::nullopt;
  if (iv.lo.is_point()) require_member(space, iv.lo.point());
  if (iv.hi.is_point()) require_member(space, iv.hi.point());

  if (iv.lo.is_neg_inf()) {
    iv.lo_closed = false;
    if (auto m = space.min()) {
      iv.lo = E(*m);
      iv.lo_closed = true;
    }
  } else if (!iv.lo_closed) {
    if (auto s = space.successor(iv.lo.point())) {
      iv.lo = E(*s);
      iv.lo_closed = true;
    }
  }
  if (iv.hi.is_pos_inf()) {
    iv.hi_closed = false;
    if (auto m = space.max()) {
      iv.hi = E(*m);
      iv.hi_closed = true;
    }
  } else if (!iv.hi_closed) {
    if (auto p = space.predecessor(iv.hi.point())) {
      iv.hi = E(*p);
      iv.hi_closed = true;
    }
  }

  const auto c = compare_extended(space, iv.lo, iv.hi);
  if (c > 0) return std::nullopt;
  if (c == 0 && !(iv.lo_closed && iv.hi_closed && iv.lo.is_point())) return std::nullopt;
  return iv;
}

template <OrderedSpace S>
bool interval_contains(const S& space, const IntervalOf<S>& iv, const typename S::point_type& x) {
  const ExtPoint<S> e(x);
  const auto l = compare_extended(space, iv.lo, e);
  if (l > 0 || (l == 0 && !iv.lo_closed)) return false;
  const auto h = compare_extended(space, e, iv.hi);
  if (h > 0 || (h == 0 && !iv.hi_closed)) return false;
  return true;
}

template <OrderedSpace S>
bool is_singleton(const S& space, const IntervalOf<S>& iv) {
  return iv.lo.is_point() && iv.hi.is_point() && iv.lo_closed && iv.hi_closed &&
         space.compare(iv.lo.point(), iv.hi.point()) == 0;
}

// Intersection of two intervals (not normalized).
template <OrderedSpace S>
IntervalOf<S> meet(const S& space, const IntervalOf<S>& a, const IntervalOf<S>& b) {
  IntervalOf<S> r = a;
  if (const auto c = compare_extended(space, a.lo, b.lo); c < 0) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else if (c == 0) {
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (const auto c = compare_extended(space, a.hi, b.hi); c > 0) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else if (c == 0) {
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

// Infimum of a nonempty canonical interval: lo if closed, else the successor
// of lo when it has one, else lo itself. nullopt when −∞ is the only lower
// bound (X has no least element).
template <OrderedSpace S>
Bound<S> infimum(const S& space, const IntervalOf<S>& iv) {
  if (iv.lo.is_neg_inf()) {
    if (auto m = space.min()) return ExtPoint<S>(*m);
    return std::nullopt;
  }
  if (iv.lo_closed) return iv.lo;
  if (auto s = space.successor(iv.lo.point())) return ExtPoint<S>(*s);
  return iv.lo;
}

template <OrderedSpace S>
Bound<S> supremum(const S& space, const IntervalOf<S>& iv) {
  if (iv.hi.is_pos_inf()) {
    if (auto m = space.max()) return ExtPoint<S>(*m);
    return std::nullopt;
  }
  if (iv.hi_closed) return iv.hi;
  if (auto p = space.predecessor(iv.hi.point())) return ExtPoint<S>(*p);
  return iv.hi;
}

}  // namespace ordercdf
