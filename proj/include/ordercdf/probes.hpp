#pragma once

// Deterministic random probes (points, levels, intervals, unions) over a
// space. Used by the proposition suite, the uniqueness check and the tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ordercdf/interval_union.hpp"
#include "ordercdf/order.hpp"

namespace ordercdf {

// 53-bit uniform double in [0,1) from one 64-bit draw; bit-identical on every
// platform (unlike std::uniform_real_distribution).
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <OrderedSpace S>
class Prober {
 public:
  using point_type = typename S::point_type;

  // `special` points (atoms, breakpoints) are drawn with elevated
  // probability, together with their representable neighbours.
  Prober(S space, std::uint64_t seed, std::vector<point_type> special = {},
         std::vector<double> special_levels = {})
      : space_(std::move(space)), rng_(seed) {
    for (const auto& p : special) {
      if (!space_.contains(p)) continue;
      special_.push_back(p);
      if (auto q = space_.step_up(p)) special_.push_back(*q);
      if (auto q = space_.step_down(p)) special_.push_back(*q);
    }
    levels_ = std::move(special_levels);
    levels_.push_back(0.0);
    levels_.push_back(1.0);
  }

  std::mt19937_64& rng() { return rng_; }
  double unit() { return unit_draw(rng_); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  point_type point() {
    if (!special_.empty() && unit() < 0.3) return special_[below(special_.size())];
    return space_.point_at_fraction(unit());
  }

  double level() {
    if (unit() < 0.15) {
      const double l = levels_[below(levels_.size())];
      // exact level or a neighbour
      switch (below(3)) {
        case 0: return l;
        case 1: return l > 0.0 ? std::nextafter(l, 0.0) : l;
        default: return l < 1.0 ? std::nextafter(l, 1.0) : l;
      }
    }
    return unit();
  }

  ExtPoint<S> endpoint() {
    const double u = unit();
    if (u < 0.05) return ExtPoint<S>::neg_inf();
    if (u < 0.10) return ExtPoint<S>::pos_inf();
    return ExtPoint<S>(point());
  }

  // Random interval with lo <= hi (possibly empty after canonicalization).
  IntervalOf<S> interval() {
    auto a = endpoint();
    auto b = endpoint();
    if (compare_extended(space_, a, b) > 0) std::swap(a, b);
    IntervalOf<S> iv{a, b, unit() < 0.5, unit() < 0.5};
    if (!iv.lo.is_point()) iv.lo_closed = false;
    if (!iv.hi.is_point()) iv.hi_closed = false;
    return iv;
  }

  UnionOf<S> union_of(std::size_t max_pieces = 4) {
    const auto n = below(max_pieces + 1);
    std::vector<IntervalOf<S>> ivs;
    for (std::size_t i = 0; i < n; ++i) ivs.push_back(interval());
    return normalize(space_, std::move(ivs));
  }

 private:
  S space_;
  std::mt19937_64 rng_;
  std::vector<point_type> special_;
  std::vector<double> levels_;
};

}  // namespace ordercdf
