#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordercdf/errors.hpp"
#include "ordercdf/order.hpp"
#include "ordercdf/spaces/finite_space.hpp"
#include "ordercdf/spaces/real_chunk.hpp"
#include "ordercdf/spaces/text.hpp"

namespace ordercdf {

// (outer rank, inner real coordinate).
struct LexPoint {
  std::size_t outer = 0;
  double inner = 0.0;

  bool operator==(const LexPoint&) const = default;
};

// Lexicographic product of a finite chain with one real interval ("fiber")
// per outer label. The last point of a closed fiber and the first point of
// the next closed fiber are neighbours; two open ends facing each other leave
// a gap and make the order incomplete.
class LexProduct {
 public:
  using point_type = LexPoint;
  static constexpr SpaceKind kind = SpaceKind::lex;
  static constexpr bool has_continuum = true;

  LexProduct(FiniteSpace outer, std::vector<ChunkBounds> fibers)
      : outer_(std::move(outer)), fibers_(std::move(fibers)) {
    if (fibers_.size() != outer_.size()) {
      throw ConfigError("space.fibers", "need exactly one fiber per outer label");
    }
    for (std::size_t i = 0; i < fibers_.size(); ++i) {
      detail::validate_chunk(fibers_[i], "space.fibers[" + std::to_string(i) + "]");
    }
  }

  // outer × [lo,hi] with every fiber closed.
  static LexProduct uniform_fibers(FiniteSpace outer, double lo = 0.0, double hi = 1.0) {
    std::vector<ChunkBounds> f(outer.size(), ChunkBounds{lo, hi, true, true});
    return LexProduct(std::move(outer), std::move(f));
  }

  const FiniteSpace& outer() const noexcept { return outer_; }
  const std::vector<ChunkBounds>& fibers() const noexcept { return fibers_; }

  std::strong_ordering compare(const LexPoint& x, const LexPoint& y) const {
    if (auto c = x.outer <=> y.outer; c != 0) return c;
    if (x.inner < y.inner) return std::strong_ordering::less;
    if (x.inner > y.inner) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  bool contains(const LexPoint& x) const {
    return x.outer < fibers_.size() && detail::chunk_contains(fibers_[x.outer], x.inner);
  }

  std::optional<LexPoint> min() const {
    if (!fibers_.front().include_lo) return std::nullopt;
    return LexPoint{0, fibers_.front().lo};
  }
  std::optional<LexPoint> max() const {
    if (!fibers_.back().include_hi) return std::nullopt;
    return LexPoint{fibers_.size() - 1, fibers_.back().hi};
  }

  std::optional<LexPoint> successor(const LexPoint& x) const {
    if (!contains(x)) return std::nullopt;
    const auto& f = fibers_[x.outer];
    if (x.inner != f.hi || x.outer + 1 >= fibers_.size()) return std::nullopt;
    const auto& g = fibers_[x.outer + 1];
    if (!g.include_lo) return std::nullopt;
    return LexPoint{x.outer + 1, g.lo};
  }
  std::optional<LexPoint> predecessor(const LexPoint& x) const {
    if (!contains(x)) return std::nullopt;
    const auto& f = fibers_[x.outer];
    if (x.inner != f.lo || x.outer == 0) return std::nullopt;
    const auto& g = fibers_[x.outer - 1];
    if (!g.include_hi) return std::nullopt;
    return LexPoint{x.outer - 1, g.hi};
  }

  std::optional<LexPoint> step_up(const LexPoint& x) const {
    const double y = std::nextafter(x.inner, std::numeric_limits<double>::infinity());
    if (detail::chunk_contains(fibers_[x.outer], y)) return LexPoint{x.outer, y};
    if (x.outer + 1 >= fibers_.size()) return std::nullopt;
    return LexPoint{x.outer + 1, detail::chunk_first(fibers_[x.outer + 1])};
  }
  std::optional<LexPoint> step_down(const LexPoint& x) const {
    const double y = std::nextafter(x.inner, -std::numeric_limits<double>::infinity());
    if (detail::chunk_contains(fibers_[x.outer], y)) return LexPoint{x.outer, y};
    if (x.outer == 0) return std::nullopt;
    return LexPoint{x.outer - 1, detail::chunk_last(fibers_[x.outer - 1])};
  }

  bool is_complete() const {
    if (!fibers_.front().include_lo || !fibers_.back().include_hi) return false;
    for (std::size_t i = 0; i + 1 < fibers_.size(); ++i) {
      if (!fibers_[i].include_hi && !fibers_[i + 1].include_lo) return false;
    }
    return true;
  }

  // Interleaves the fibers' dyadic enumerations.
  std::vector<LexPoint> dense_points(std::size_t budget) const {
    const std::size_t m = fibers_.size();
    const std::size_t per = budget / m + 1;
    std::vector<std::vector<double>> per_fiber;
    for (const auto& f : fibers_) per_fiber.push_back(detail::dyadic_points(f, per));
    std::vector<LexPoint> out;
    for (std::size_t k = 0; out.size() < budget; ++k) {
      bool any = false;
      for (std::size_t o = 0; o < m && out.size() < budget; ++o) {
        if (k < per_fiber[o].size()) {
          out.push_back({o, per_fiber[o][k]});
          any = true;
        }
      }
      if (!any) break;
    }
    return out;
  }

  LexPoint point_at_fraction(double t) const {
    const double s = std::clamp(t, 0.0, 1.0) * static_cast<double>(fibers_.size());
    const auto o = std::min(fibers_.size() - 1, static_cast<std::size_t>(s));
    return {o, detail::chunk_point_at_fraction(fibers_[o], s - static_cast<double>(o))};
  }

  std::string format(const LexPoint& x) const {
    return "(" + outer_.format(FinitePoint{x.outer}) + "," + text::format_real(x.inner) + ")";
  }

  LexPoint parse(std::string_view s) const {
    auto t = text::trim(s);
    if (t.size() < 5 || t.front() != '(' || t.back() != ')') {
      throw DomainError("lex point must look like (label,value): '" + std::string(t) + "'");
    }
    t = t.substr(1, t.size() - 2);
    const auto comma = t.find(',');
    if (comma == std::string_view::npos) {
      throw DomainError("lex point needs a comma: '" + std::string(s) + "'");
    }
    return {outer_.parse(t.substr(0, comma)).rank, text::parse_real(t.substr(comma + 1))};
  }

  double numeric_value(const LexPoint& x) const { return x.inner; }

  std::size_t grid_size(double resolution) const {
    std::size_t n = 0;
    for (const auto& f : fibers_) n += detail::ChunkGrid(f, resolution).size();
    return n;
  }
  LexPoint grid_point(double resolution, std::size_t k) const {
    for (std::size_t o = 0; o < fibers_.size(); ++o) {
      const detail::ChunkGrid g(fibers_[o], resolution);
      if (k < g.size()) return {o, g.value(k)};
      k -= g.size();
    }
    throw DomainError("grid index out of range");
  }

  std::size_t chunk_count() const { return fibers_.size(); }
  std::size_t chunk_of(const LexPoint& x) const { return x.outer; }
  double coordinate(const LexPoint& x) const { return x.inner; }
  LexPoint at(std::size_t c, double v) const { return {c, v}; }
  ChunkBounds chunk_bounds(std::size_t c) const { return fibers_.at(c); }

  bool operator==(const LexProduct& o) const {
    if (!(outer_ == o.outer_) || fibers_.size() != o.fibers_.size()) return false;
    for (std::size_t i = 0; i < fibers_.size(); ++i) {
      const auto& a = fibers_[i];
      const auto& b = o.fibers_[i];
      if (a.lo != b.lo || a.hi != b.hi || a.include_lo != b.include_lo ||
          a.include_hi != b.include_hi) {
        return false;
      }
    }
    return true;
  }

 private:
  FiniteSpace outer_;
  std::vector<ChunkBounds> fibers_;
};

static_assert(ContinuumSpace<LexProduct>);

}  // namespace ordercdf
