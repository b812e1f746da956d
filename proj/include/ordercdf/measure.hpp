#pragma once

// Probability measures given as finitely many atoms plus uniform-density
// segments. measure_of evaluates μ on the interval algebra directly, with no
// reference to the cdf; it is the brute-force side of the cdf identities.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ordercdf/errors.hpp"
#include "ordercdf/interval_syntax.hpp"
#include "ordercdf/interval_union.hpp"
#include "ordercdf/order.hpp"

namespace ordercdf {

inline constexpr double kMassTolerance = 1e-12;

template <class P>
struct Atom {
  P at;
  double mass = 0.0;

  bool operator==(const Atom&) const = default;
};

template <class P>
struct DensitySegment {
  Interval<P> interval;
  double mass = 0.0;

  bool operator==(const DensitySegment&) const = default;
};

// Coordinates of a segment inside one real chunk.
struct ChunkSpan {
  std::size_t chunk = 0;
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
};

namespace detail {

// Coordinate of an interval endpoint seen from `chunk`: endpoints in earlier
// chunks (or −∞) clip to −inf, later ones (or +∞) to +inf.
template <ContinuumSpace S>
double clip_coordinate(const S& space, const ExtPoint<S>& e, std::size_t chunk) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (e.is_neg_inf()) return -inf;
  if (e.is_pos_inf()) return inf;
  const auto c = space.chunk_of(e.point());
  if (c < chunk) return -inf;
  if (c > chunk) return inf;
  return space.coordinate(e.point());
}

template <ContinuumSpace S>
std::optional<ChunkSpan> continuum_span(const S& space, const IntervalOf<S>& iv) {
  std::size_t clo = 0;
  double vlo = space.chunk_bounds(0).lo;
  if (iv.lo.is_point()) {
    clo = space.chunk_of(iv.lo.point());
    vlo = space.coordinate(iv.lo.point());
    if (!iv.lo_closed && vlo == space.chunk_bounds(clo).hi) {
      if (clo + 1 >= space.chunk_count()) return std::nullopt;
      ++clo;
      vlo = space.chunk_bounds(clo).lo;
    }
  }
  const std::size_t last = space.chunk_count() - 1;
  std::size_t chi = last;
  double vhi = space.chunk_bounds(last).hi;
  if (iv.hi.is_point()) {
    chi = space.chunk_of(iv.hi.point());
    vhi = space.coordinate(iv.hi.point());
    if (!iv.hi_closed && vhi == space.chunk_bounds(chi).lo) {
      if (chi == 0) return std::nullopt;
      --chi;
      vhi = space.chunk_bounds(chi).hi;
    }
  }
  if (clo != chi || !(vlo < vhi)) return std::nullopt;
  return ChunkSpan{clo, vlo, vhi};
}

}  // namespace detail

template <OrderedSpace S>
class MeasureSpec {
 public:
  using space_type = S;
  using point_type = typename S::point_type;

  // Validates and sorts. Throws ConfigError naming the offending field.
  MeasureSpec(S space, std::vector<Atom<point_type>> atoms,
              std::vector<DensitySegment<point_type>> segments)
      : space_(std::move(space)), atoms_(std::move(atoms)), segments_(std::move(segments)) {
    validate();
  }

  const S& space() const noexcept { return space_; }
  const std::vector<Atom<point_type>>& atoms() const noexcept { return atoms_; }
  const std::vector<DensitySegment<point_type>>& segments() const noexcept { return segments_; }
  const std::vector<ChunkSpan>& spans() const noexcept { return spans_; }

  // The atoms, sorted along the order.
  std::vector<Atom<point_type>> atom_set() const { return atoms_; }

  double atom_mass(const point_type& x) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x, [&](const auto& a, const auto& p) {
      return space_.compare(a.at, p) < 0;
    });
    if (it != atoms_.end() && space_.compare(it->at, x) == 0) return it->mass;
    return 0.0;
  }

  double total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.mass;
    for (const auto& s : segments_) m += s.mass;
    return m;
  }

  // μ(u): atom masses inside u plus, per segment, mass × |segment ∩ u| / |segment|.
  double measure_of(const UnionOf<S>& u) const {
    double total = 0.0;
    for (const auto& a : atoms_) {
      if (membership(space_, a.at, u)) total += a.mass;
    }
    if constexpr (ContinuumSpace<S>) {
      for (std::size_t k = 0; k < segments_.size(); ++k) {
        const auto& sp = spans_[k];
        double covered = 0.0;
        for (const auto& iv : u.intervals()) {
          const double lo = std::max(sp.lo, detail::clip_coordinate(space_, iv.lo, sp.chunk));
          const double hi = std::min(sp.hi, detail::clip_coordinate(space_, iv.hi, sp.chunk));
          if (hi > lo) covered += hi - lo;
        }
        total += segments_[k].mass * (covered / sp.length());
      }
    }
    return std::clamp(total, 0.0, 1.0);
  }

  double measure_of(const IntervalOf<S>& iv) const { return measure_of(normalize(space_, {iv})); }

  bool operator==(const MeasureSpec& o) const {
    return space_ == o.space_ && atoms_ == o.atoms_ && segments_ == o.segments_;
  }

 private:
  void validate() {
    if (atoms_.empty() && segments_.empty()) {
      throw ConfigError("measure", "a probability measure needs at least one atom or segment");
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const auto field = "measure.atoms[" + std::to_string(i) + "]";
      if (!space_.contains(atoms_[i].at)) {
        throw ConfigError(field + ".at",
                          "atom at " + space_.format(atoms_[i].at) + " lies outside the space");
      }
      check_mass(atoms_[i].mass, field + ".mass");
    }
    std::stable_sort(atoms_.begin(), atoms_.end(),
                     [&](const auto& a, const auto& b) { return space_.compare(a.at, b.at) < 0; });
    for (std::size_t i = 1; i < atoms_.size(); ++i) {
      if (space_.compare(atoms_[i - 1].at, atoms_[i].at) == 0) {
        throw ConfigError("measure.atoms", "two atoms at " + space_.format(atoms_[i].at));
      }
    }

    for (std::size_t i = 0; i < segments_.size(); ++i) {
      const auto field = "measure.segments[" + std::to_string(i) + "]";
      check_mass(segments_[i].mass, field + ".mass");
      if constexpr (ContinuumSpace<S>) {
        std::optional<IntervalOf<S>> c;
        try {
          c = canonical(space_, segments_[i].interval);
        } catch (const DomainError& e) {
          throw ConfigError(field + ".interval", e.what());
        }
        if (!c) throw ConfigError(field + ".interval", "segment interval is empty");
        segments_[i].interval = *c;
        if (!detail::continuum_span(space_, *c)) {
          throw ConfigError(field + ".interval",
                            "segment must have positive length inside a single real fiber");
        }
      } else {
        throw ConfigError(field, "density segments need a real interval or lex fiber; " +
                                     std::string(to_string(S::kind)) + " spaces have none");
      }
    }
    if constexpr (ContinuumSpace<S>) {
      std::stable_sort(segments_.begin(), segments_.end(), [&](const auto& a, const auto& b) {
        return compare_extended(space_, a.interval.lo, b.interval.lo) < 0;
      });
      for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        const auto a = normalize(space_, {segments_[i].interval});
        const auto b = normalize(space_, {segments_[i + 1].interval});
        if (!intersect(space_, a, b).empty()) {
          throw ConfigError("measure.segments",
                            "segments " + format_interval(space_, segments_[i].interval) + " and " +
                                format_interval(space_, segments_[i + 1].interval) + " overlap");
        }
      }
      spans_.clear();
      for (const auto& s : segments_) spans_.push_back(*detail::continuum_span(space_, s.interval));
    }

    const double total = total_mass();
    if (std::abs(total - 1.0) > kMassTolerance) {
      throw ConfigError("measure.total_mass",
                        "masses sum to " + text::format_value(total) + ", expected 1");
    }
  }

  static void check_mass(double m, const std::string& field) {
    if (!std::isfinite(m) || !(m > 0.0) || m > 1.0) {
      throw ConfigError(field, "mass must lie in ]0,1]");
    }
  }

  S space_;
  std::vector<Atom<point_type>> atoms_;
  std::vector<DensitySegment<point_type>> segments_;
  std::vector<ChunkSpan> spans_;
};

}  // namespace ordercdf
