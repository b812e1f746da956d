#pragma once

// Linear-order abstraction shared by every module.
//
// A space is a value type describing a totally ordered universe X together
// with the queries the algorithms need: neighbours (for isolated points),
// extremes, a countable dense enumeration, and, for spaces carrying a length
// structure, a coordinate map onto real "chunks" (one per real fiber).

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordercdf/errors.hpp"

namespace ordercdf {

enum class SpaceKind : std::uint8_t { finite, int_range, real_interval, lex };

inline std::string_view to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::finite: return "finite";
    case SpaceKind::int_range: return "int_range";
    case SpaceKind::real_interval: return "real_interval";
    case SpaceKind::lex: return "lex";
  }
  return "?";
}

// Coordinate range of a real chunk, with the space's inclusion flags at the
// chunk ends.
struct ChunkBounds {
  double lo = 0.0;
  double hi = 0.0;
  bool include_lo = true;
  bool include_hi = true;
};

template <class S>
concept OrderedSpace =
    std::copyable<S> &&
    requires(const S& s, const typename S::point_type& x, std::string_view text,
             double t, std::size_t n) {
      typename S::point_type;
      { S::kind } -> std::convertible_to<SpaceKind>;
      { S::has_continuum } -> std::convertible_to<bool>;
      // Total order on representable values (including chunk boundary values
      // that are not members of X).
      { s.compare(x, x) } -> std::same_as<std::strong_ordering>;
      { s.contains(x) } -> std::same_as<bool>;
      { s.min() } -> std::same_as<std::optional<typename S::point_type>>;
      { s.max() } -> std::same_as<std::optional<typename S::point_type>>;
      // z with ]x,z[ empty (resp. ]z,x[ empty), when one exists.
      { s.successor(x) } -> std::same_as<std::optional<typename S::point_type>>;
      { s.predecessor(x) } -> std::same_as<std::optional<typename S::point_type>>;
      // Next representable member of X above/below x. Equals successor /
      // predecessor on discrete parts; one ulp on real chunks.
      { s.step_up(x) } -> std::same_as<std::optional<typename S::point_type>>;
      { s.step_down(x) } -> std::same_as<std::optional<typename S::point_type>>;
      { s.is_complete() } -> std::same_as<bool>;
      { s.dense_points(n) } -> std::same_as<std::vector<typename S::point_type>>;
      // Monotone map [0,1] -> X used to draw probe points.
      { s.point_at_fraction(t) } -> std::same_as<typename S::point_type>;
      { s.format(x) } -> std::same_as<std::string>;
      { s.parse(text) } -> std::same_as<typename S::point_type>;
      { s.numeric_value(x) } -> std::same_as<double>;
      // Definitional grid at a coordinate resolution (all points on discrete
      // spaces), addressed by index in increasing order.
      { s.grid_size(t) } -> std::same_as<std::size_t>;
      { s.grid_point(t, n) } -> std::same_as<typename S::point_type>;
    };

// Spaces with real chunks. Chunks are ordered like the points they hold.
template <class S>
concept ContinuumSpace =
    OrderedSpace<S> && S::has_continuum &&
    requires(const S& s, const typename S::point_type& x, std::size_t c, double v) {
      { s.chunk_count() } -> std::same_as<std::size_t>;
      { s.chunk_of(x) } -> std::same_as<std::size_t>;
      { s.coordinate(x) } -> std::same_as<double>;
      { s.at(c, v) } -> std::same_as<typename S::point_type>;
      { s.chunk_bounds(c) } -> std::same_as<ChunkBounds>;
    };

// An element of X ∪ {−∞, +∞}.
template <class P>
class ExtendedPoint {
 public:
  enum class Tag : std::uint8_t { neg_inf, point, pos_inf };

  ExtendedPoint(P p) : tag_(Tag::point), point_(std::move(p)) {}  // NOLINT(implicit)

  static ExtendedPoint neg_inf() { return ExtendedPoint(Tag::neg_inf); }
  static ExtendedPoint pos_inf() { return ExtendedPoint(Tag::pos_inf); }

  Tag tag() const noexcept { return tag_; }
  bool is_point() const noexcept { return tag_ == Tag::point; }
  bool is_neg_inf() const noexcept { return tag_ == Tag::neg_inf; }
  bool is_pos_inf() const noexcept { return tag_ == Tag::pos_inf; }

  const P& point() const {
    if (!is_point()) throw DomainError("extended point is infinite");
    return *point_;
  }

  bool operator==(const ExtendedPoint& other) const {
    if (tag_ != other.tag_) return false;
    return !is_point() || *point_ == *other.point_;
  }

 private:
  explicit ExtendedPoint(Tag t) : tag_(t) {}

  Tag tag_;
  std::optional<P> point_;
};

template <OrderedSpace S>
using ExtPoint = ExtendedPoint<typename S::point_type>;

// Result of an infimum/supremum query. nullopt means the bound does not
// exist in X.
template <OrderedSpace S>
using Bound = std::optional<ExtPoint<S>>;

template <OrderedSpace S>
std::strong_ordering compare_extended(const S& space, const ExtPoint<S>& a,
                                      const ExtPoint<S>& b) {
  if (a.is_point() && b.is_point()) return space.compare(a.point(), b.point());
  auto rank = [](const ExtPoint<S>& e) {
    return e.is_neg_inf() ? 0 : (e.is_point() ? 1 : 2);
  };
  return rank(a) <=> rank(b);
}

template <OrderedSpace S>
void require_member(const S& space, const typename S::point_type& x) {
  if (!space.contains(x)) {
    throw DomainError("point " + space.format(x) + " is not an element of the space");
  }
}

enum class Ordering : std::uint8_t { less, equal, greater };

inline std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::greater: return "greater";
  }
  return "?";
}

// Checked comparison of two members of X.
template <OrderedSpace S>
Ordering compare(const S& space, const typename S::point_type& x,
                 const typename S::point_type& y) {
  require_member(space, x);
  require_member(space, y);
  const auto c = space.compare(x, y);
  if (c < 0) return Ordering::less;
  if (c > 0) return Ordering::greater;
  return Ordering::equal;
}

template <OrderedSpace S>
bool less(const S& space, const typename S::point_type& x, const typename S::point_type& y) {
  return space.compare(x, y) < 0;
}

template <OrderedSpace S>
bool same_point(const S& space, const typename S::point_type& x,
                const typename S::point_type& y) {
  return space.compare(x, y) == 0;
}

template <class P>
struct IsolationReport {
  P point;
  bool left_isolated = false;
  bool right_isolated = false;
  // Immediate neighbour witnessing the empty gap; absent when the flag comes
  // from the point being an extreme (`is_min` / `is_max`) or is false.
  std::optional<P> left_witness{};
  std::optional<P> right_witness{};
  bool is_min = false;
  bool is_max = false;

  bool isolated() const noexcept { return left_isolated && right_isolated; }
};

// x is left-isolated iff (<x) is empty or some z has ]z,x[ empty.
template <OrderedSpace S>
IsolationReport<typename S::point_type> classify_isolation(const S& space,
                                                          const typename S::point_type& x) {
  require_member(space, x);
  IsolationReport<typename S::point_type> r{x};
  if (const auto lo = space.min(); lo && same_point(space, *lo, x)) {
    r.is_min = true;
    r.left_isolated = true;
  } else if (auto z = space.predecessor(x)) {
    r.left_isolated = true;
    r.left_witness = std::move(z);
  }
  if (const auto hi = space.max(); hi && same_point(space, *hi, x)) {
    r.is_max = true;
    r.right_isolated = true;
  } else if (auto z = space.successor(x)) {
    r.right_isolated = true;
    r.right_witness = std::move(z);
  }
  return r;
}

// Infimum of a finite point set: its least element. Empty sets give +∞.
template <OrderedSpace S>
Bound<S> infimum(const S& space, const std::vector<typename S::point_type>& points) {
  if (points.empty()) return ExtPoint<S>::pos_inf();
  const auto* best = &points.front();
  for (const auto& p : points) {
    require_member(space, p);
    if (less(space, p, *best)) best = &p;
  }
  return ExtPoint<S>(*best);
}

// Supremum of a finite point set. Empty sets give −∞.
template <OrderedSpace S>
Bound<S> supremum(const S& space, const std::vector<typename S::point_type>& points) {
  if (points.empty()) return ExtPoint<S>::neg_inf();
  const auto* best = &points.front();
  for (const auto& p : points) {
    require_member(space, p);
    if (less(space, *best, p)) best = &p;
  }
  return ExtPoint<S>(*best);
}

}  // namespace ordercdf
