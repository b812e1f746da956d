#pragma once

// ∫ g dμ computed in the space itself: atom terms plus, per segment, its
// density times a composite Simpson rule over the segment's coordinates.
// Nothing here goes through F or G.

#include <functional>

#include "ordercdf/measure.hpp"

namespace ordercdf::oracle {

template <OrderedSpace S>
double integrate_direct(const MeasureSpec<S>& spec,
                        const std::function<double(const typename S::point_type&)>& g,
                        std::size_t cells = 2000) {
  double total = 0.0;
  for (const auto& a : spec.atoms()) total += a.mass * g(a.at);
  if constexpr (ContinuumSpace<S>) {
    const auto& sp = spec.space();
    const std::size_t n = 2 * ((cells + 1) / 2);  // Simpson needs an even count
    for (std::size_t k = 0; k < spec.segments().size(); ++k) {
      const auto& span = spec.spans()[k];
      const double h = span.length() / static_cast<double>(n);
      // the ends may lie outside X; nudge them inside
      auto at = [&](std::size_t i) {
        double c = span.lo + static_cast<double>(i) * h;
        if (i == 0) c = std::nextafter(span.lo, span.hi);
        if (i == n) c = std::nextafter(span.hi, span.lo);
        return g(sp.at(span.chunk, c));
      };
      double s = at(0) + at(n);
      for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * at(i);
      total += spec.segments()[k].mass / span.length() * s * h / 3.0;
    }
  }
  return total;
}

}  // namespace ordercdf::oracle
