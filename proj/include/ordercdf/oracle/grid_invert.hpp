#pragma once

// Definitional quantile: the smallest point of a coordinate grid whose F
// reaches r. Binary search over the grid index, since F is monotone along it.

#include <string>

#include "ordercdf/cdf.hpp"
#include "ordercdf/errors.hpp"
#include "ordercdf/spaces/text.hpp"

namespace ordercdf::oracle {

inline constexpr double kDefaultResolution = 1e-6;

template <OrderedSpace S>
typename S::point_type grid_invert(const Cdf<S>& cdf, double r,
                                   double resolution = kDefaultResolution) {
  if (!(resolution >= 1e-6)) throw DomainError("grid resolution must be at least 1e-6");
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("level outside [0,1]");
  const auto& sp = cdf.space();
  const auto n = sp.grid_size(resolution);
  std::size_t lo = 0, hi = n;  // first index with F >= r lies in [lo, hi]
  while (lo < hi) {
    const auto mid = lo + (hi - lo) / 2;
    if (cdf.eval_F(sp.grid_point(resolution, mid)) >= r) hi = mid;
    else lo = mid + 1;
  }
  if (lo == n) {
    throw DomainError("no grid point reaches level " + text::format_value(r) +
                      " at resolution " + text::format_value(resolution));
  }
  return sp.grid_point(resolution, lo);
}

}  // namespace ordercdf::oracle
