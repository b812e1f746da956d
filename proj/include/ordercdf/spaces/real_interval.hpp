#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordercdf/order.hpp"
#include "ordercdf/spaces/real_chunk.hpp"
#include "ordercdf/spaces/text.hpp"

namespace ordercdf {

// A real interval with its usual order. Binary64 values are compared
// exactly; interior points are neither left- nor right-isolated.
class RealInterval {
 public:
  using point_type = double;
  static constexpr SpaceKind kind = SpaceKind::real_interval;
  static constexpr bool has_continuum = true;

  RealInterval(double lo, double hi, bool include_lo = true, bool include_hi = true)
      : bounds_{lo, hi, include_lo, include_hi} {
    detail::validate_chunk(bounds_, "space");
  }

  static RealInterval unit() { return RealInterval(0.0, 1.0); }

  const ChunkBounds& bounds() const noexcept { return bounds_; }

  std::strong_ordering compare(double x, double y) const {
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  bool contains(double x) const { return detail::chunk_contains(bounds_, x); }

  std::optional<double> min() const {
    return bounds_.include_lo ? std::optional<double>(bounds_.lo) : std::nullopt;
  }
  std::optional<double> max() const {
    return bounds_.include_hi ? std::optional<double>(bounds_.hi) : std::nullopt;
  }
  std::optional<double> successor(double) const { return std::nullopt; }
  std::optional<double> predecessor(double) const { return std::nullopt; }

  std::optional<double> step_up(double x) const {
    const double y = std::nextafter(x, std::numeric_limits<double>::infinity());
    return contains(y) ? std::optional<double>(y) : std::nullopt;
  }
  std::optional<double> step_down(double x) const {
    const double y = std::nextafter(x, -std::numeric_limits<double>::infinity());
    return contains(y) ? std::optional<double>(y) : std::nullopt;
  }

  bool is_complete() const { return bounds_.include_lo && bounds_.include_hi; }

  std::vector<double> dense_points(std::size_t budget) const {
    return detail::dyadic_points(bounds_, budget);
  }
  double point_at_fraction(double t) const { return detail::chunk_point_at_fraction(bounds_, t); }

  std::string format(double x) const { return text::format_real(x); }
  double parse(std::string_view s) const { return text::parse_real(s); }
  double numeric_value(double x) const { return x; }

  std::size_t grid_size(double resolution) const {
    return detail::ChunkGrid(bounds_, resolution).size();
  }
  double grid_point(double resolution, std::size_t k) const {
    return detail::ChunkGrid(bounds_, resolution).value(k);
  }

  std::size_t chunk_count() const { return 1; }
  std::size_t chunk_of(double) const { return 0; }
  double coordinate(double x) const { return x; }
  double at(std::size_t, double v) const { return v; }
  ChunkBounds chunk_bounds(std::size_t) const { return bounds_; }

  bool operator==(const RealInterval& o) const {
    return bounds_.lo == o.bounds_.lo && bounds_.hi == o.bounds_.hi &&
           bounds_.include_lo == o.bounds_.include_lo && bounds_.include_hi == o.bounds_.include_hi;
  }

 private:
  ChunkBounds bounds_;
};

static_assert(ContinuumSpace<RealInterval>);

}  // namespace ordercdf
