#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ordercdf/errors.hpp"
#include "ordercdf/order.hpp"

namespace ordercdf::detail {

inline void validate_chunk(const ChunkBounds& b, const std::string& field) {
  if (!std::isfinite(b.lo) || !std::isfinite(b.hi)) {
    throw ConfigError(field, "real interval bounds must be finite");
  }
  if (!(b.lo < b.hi)) throw ConfigError(field, "real interval needs lo < hi");
}

inline bool chunk_contains(const ChunkBounds& b, double v) {
  if (std::isnan(v)) return false;
  if (v < b.lo || v > b.hi) return false;
  if (v == b.lo && !b.include_lo) return false;
  if (v == b.hi && !b.include_hi) return false;
  return true;
}

inline double chunk_first(const ChunkBounds& b) {
  return b.include_lo ? b.lo : std::nextafter(b.lo, b.hi);
}

inline double chunk_last(const ChunkBounds& b) {
  return b.include_hi ? b.hi : std::nextafter(b.hi, b.lo);
}

// k-th element of the dyadic enumeration of the chunk: included endpoints
// first, then lo + (hi-lo) * j/2^L for odd j, level by level.
inline std::vector<double> dyadic_points(const ChunkBounds& b, std::size_t budget) {
  std::vector<double> out;
  out.reserve(std::min<std::size_t>(budget, 1u << 22));
  if (out.size() < budget && b.include_lo) out.push_back(b.lo);
  if (out.size() < budget && b.include_hi) out.push_back(b.hi);
  const double width = b.hi - b.lo;
  for (int level = 1; level < 62 && out.size() < budget; ++level) {
    const double denom = std::ldexp(1.0, level);
    const auto count = std::uint64_t{1} << (level - 1);
    for (std::uint64_t i = 0; i < count && out.size() < budget; ++i) {
      const double q = static_cast<double>(2 * i + 1) / denom;
      const double v = b.lo + width * q;
      if (chunk_contains(b, v)) out.push_back(v);
    }
  }
  return out;
}

inline double chunk_point_at_fraction(const ChunkBounds& b, double t) {
  double v = b.lo + (b.hi - b.lo) * std::clamp(t, 0.0, 1.0);
  v = std::clamp(v, b.lo, b.hi);
  if (!chunk_contains(b, v)) v = v <= b.lo ? chunk_first(b) : chunk_last(b);
  return v;
}

// Grid of step <= resolution over the chunk; excluded endpoints are dropped.
struct ChunkGrid {
  ChunkBounds bounds;
  std::size_t cells = 1;

  ChunkGrid(const ChunkBounds& b, double resolution) : bounds(b) {
    if (!(resolution > 0.0)) throw DomainError("grid resolution must be positive");
    const double n = std::ceil((b.hi - b.lo) / resolution);
    if (n > 1e9) throw DomainError("grid resolution too fine");
    cells = std::max<std::size_t>(1, static_cast<std::size_t>(n));
  }

  std::size_t first_index() const { return bounds.include_lo ? 0 : 1; }
  std::size_t last_index() const { return bounds.include_hi ? cells : cells - 1; }
  std::size_t size() const {
    return last_index() >= first_index() ? last_index() - first_index() + 1 : 0;
  }
  double value(std::size_t k) const {
    const auto idx = first_index() + k;
    if (idx == cells) return bounds.hi;
    return bounds.lo + (bounds.hi - bounds.lo) *
                           (static_cast<double>(idx) / static_cast<double>(cells));
  }
  double step() const { return (bounds.hi - bounds.lo) / static_cast<double>(cells); }
};

}  // namespace ordercdf::detail
