#pragma once

// F(x) = μ(≤x) and F⁻(x) = μ(<x) for a MeasureSpec.
//
// The measure is flattened into an ordered piece table: atoms, and density
// pieces (segments split at any atom lying inside them) with cumulative
// masses before/after each piece. F is constant between pieces, affine on
// density pieces and jumps at atoms; both F and F⁻ are one binary search
// plus one affine evaluation.
//
// Floating-point contract: every evaluation is a composition of monotone
// rounded operations clamped to the piece's cumulative bounds, so the
// computed F is non-decreasing along the order and F(max X) = 1 exactly.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "ordercdf/errors.hpp"
#include "ordercdf/interval_union.hpp"
#include "ordercdf/measure.hpp"
#include "ordercdf/probes.hpp"

namespace ordercdf {

template <class P>
struct Piece {
  enum class Kind : std::uint8_t { atom, density };

  Kind kind = Kind::atom;
  // Atom: both equal the atom. Density: chunk coordinates of the ends, which
  // may be boundary values outside X.
  P start;
  P end;
  ChunkSpan span;
  std::size_t segment = 0;  // density: index into MeasureSpec::segments()
  double mass = 0.0;
  double below = 0.0;  // F⁻ at the piece start
  double above = 0.0;  // F at the piece end

  bool is_atom() const noexcept { return kind == Kind::atom; }
  bool is_density() const noexcept { return kind == Kind::density; }
  double density() const { return is_density() ? mass / span.length() : 0.0; }
};

template <OrderedSpace S>
class Cdf {
 public:
  using space_type = S;
  using point_type = typename S::point_type;

  explicit Cdf(MeasureSpec<S> spec) : spec_(std::move(spec)) { build(); }

  const MeasureSpec<S>& spec() const noexcept { return spec_; }
  const S& space() const noexcept { return spec_.space(); }
  const std::vector<Piece<point_type>>& pieces() const noexcept { return pieces_; }

  double eval_F(const point_type& x) const {
    require_member(space(), x);
    return F_raw(x);
  }

  // F⁻(x) = μ(<x), read from the table (not as F(x) − μ({x})).
  double eval_F_minus(const point_type& x) const {
    require_member(space(), x);
    return F_minus_raw(x);
  }

  // Conventions for extended endpoints: F(−∞) = F⁻(−∞) = 0, F(+∞) = F⁻(+∞) = 1.
  double F_at(const ExtPoint<S>& e) const {
    if (e.is_neg_inf()) return 0.0;
    if (e.is_pos_inf()) return 1.0;
    return eval_F(e.point());
  }
  double F_minus_at(const ExtPoint<S>& e) const {
    if (e.is_neg_inf()) return 0.0;
    if (e.is_pos_inf()) return 1.0;
    return eval_F_minus(e.point());
  }

  double atom_mass(const point_type& x) const { return spec_.atom_mass(x); }

  // μ of one interval via the four bracket formulas:
  //   ]a,b]: F(b)−F(a)   [a,b]: F(b)−F⁻(a)   ]a,b[: F⁻(b)−F(a)   [a,b[: F⁻(b)−F⁻(a)
  double interval_measure(const IntervalOf<S>& iv) const {
    const auto c = canonical(space(), iv);
    if (!c) return 0.0;
    const double lower = c->lo_closed ? F_minus_at(c->lo) : F_at(c->lo);
    const double upper = c->hi_closed ? F_at(c->hi) : F_minus_at(c->hi);
    return std::max(0.0, upper - lower);
  }

  double interval_measure(const UnionOf<S>& u) const {
    double m = 0.0;
    for (const auto& iv : u.intervals()) m += interval_measure(iv);
    return std::min(1.0, m);
  }

  // sup F(<x), scanned over the dense enumeration, the atoms below x and the
  // largest representable point below x. Equals F⁻(x).
  double sup_F_below(const point_type& x, std::size_t dense_budget = 4096) const {
    require_member(space(), x);
    if (auto m = space().min(); m && space().compare(*m, x) == 0) {
      throw DomainError("sup F(<x) is a supremum over the empty set when x = min X");
    }
    double best = 0.0;
    auto consider = [&](const point_type& y) {
      if (space().contains(y) && space().compare(y, x) < 0) best = std::max(best, F_raw(y));
    };
    for (const auto& y : space().dense_points(dense_budget)) consider(y);
    for (const auto& a : spec_.atoms()) consider(a.at);
    if (auto y = space().step_down(x)) consider(*y);
    return best;
  }

  // inf F⁻(>x), the dual scan. Equals F(x).
  double inf_Fminus_above(const point_type& x, std::size_t dense_budget = 4096) const {
    require_member(space(), x);
    if (auto m = space().max(); m && space().compare(*m, x) == 0) {
      throw DomainError("inf F⁻(>x) is an infimum over the empty set when x = max X");
    }
    double best = 1.0;
    auto consider = [&](const point_type& y) {
      if (space().contains(y) && space().compare(x, y) < 0) best = std::min(best, F_minus_raw(y));
    };
    for (const auto& y : space().dense_points(dense_budget)) consider(y);
    for (const auto& a : spec_.atoms()) consider(a.at);
    if (auto y = space().step_up(x)) consider(*y);
    return best;
  }

  // Points where F jumps, with the jump F(x) − F⁻(x).
  std::vector<Atom<point_type>> discontinuities() const {
    std::vector<Atom<point_type>> out;
    for (const auto& p : pieces_) {
      if (!p.is_atom()) continue;
      const double jump = F_raw(p.start) - F_minus_raw(p.start);
      if (jump > 0.0) out.push_back({p.start, jump});
    }
    return out;
  }

  // Members of X at which F changes regime (atoms and segment ends), sorted.
  std::vector<point_type> breakpoints() const {
    std::vector<point_type> pts;
    for (const auto& p : pieces_) {
      if (space().contains(p.start)) pts.push_back(p.start);
      if (space().contains(p.end)) pts.push_back(p.end);
    }
    std::sort(pts.begin(), pts.end(),
              [&](const auto& a, const auto& b) { return space().compare(a, b) < 0; });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](const auto& a, const auto& b) { return space().compare(a, b) == 0; }),
              pts.end());
    return pts;
  }

  // F at chunk coordinate `c` of density piece j.
  double level_in_piece(std::size_t j, double c) const {
    const auto& p = pieces_[j];
    if (c >= p.span.hi) return p.above;
    if (c <= p.span.lo) return p.below;
    // strictly below the piece's top level until its last coordinate
    const double frac = (c - p.span.lo) / p.span.length();
    return std::min(std::nextafter(p.above, p.below), p.below + (p.above - p.below) * frac);
  }

 private:
  double F_raw(const point_type& x) const {
    const auto j = static_cast<std::size_t>(
        std::partition_point(pieces_.begin(), pieces_.end(),
                             [&](const auto& p) { return space().compare(p.end, x) <= 0; }) -
        pieces_.begin());
    return level_at(j, x);
  }

  double F_minus_raw(const point_type& x) const {
    const auto j = static_cast<std::size_t>(
        std::partition_point(pieces_.begin(), pieces_.end(),
                             [&](const auto& p) {
                               const auto c = space().compare(p.end, x);
                               return p.is_atom() ? c < 0 : c <= 0;
                             }) -
        pieces_.begin());
    return level_at(j, x);
  }

  double level_at(std::size_t j, const point_type& x) const {
    if (j == pieces_.size()) return 1.0;
    const auto& p = pieces_[j];
    if constexpr (ContinuumSpace<S>) {
      if (p.is_density() && space().compare(p.start, x) < 0) {
        return level_in_piece(j, space().coordinate(x));
      }
    }
    return p.below;
  }

  void build() {
    const auto& sp = space();
    for (const auto& a : spec_.atoms()) {
      Piece<point_type> p{Piece<point_type>::Kind::atom, a.at, a.at, {}};
      p.mass = a.mass;
      pieces_.push_back(std::move(p));
    }
    if constexpr (ContinuumSpace<S>) {
      const auto& segs = spec_.segments();
      for (std::size_t k = 0; k < segs.size(); ++k) {
        const auto span = spec_.spans()[k];
        std::vector<double> cuts{span.lo};
        for (const auto& a : spec_.atoms()) {
          if (sp.chunk_of(a.at) != span.chunk) continue;
          const double c = sp.coordinate(a.at);
          if (c > span.lo && c < span.hi) cuts.push_back(c);
        }
        cuts.push_back(span.hi);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
          Piece<point_type> p{Piece<point_type>::Kind::density, sp.at(span.chunk, cuts[i]),
                              sp.at(span.chunk, cuts[i + 1]), {}};
          p.span = ChunkSpan{span.chunk, cuts[i], cuts[i + 1]};
          p.segment = k;
          p.mass = cuts.size() == 2 ? segs[k].mass
                                    : segs[k].mass * (p.span.length() / span.length());
          pieces_.push_back(std::move(p));
        }
      }
    }
    std::stable_sort(pieces_.begin(), pieces_.end(), [&](const auto& a, const auto& b) {
      const auto c = sp.compare(a.start, b.start);
      if (c != 0) return c < 0;
      return a.is_atom() && !b.is_atom();
    });
    double cum = 0.0;
    for (auto& p : pieces_) {
      p.below = cum;
      cum = cum + p.mass;
      p.above = cum;
    }
    // Total mass is 1 within the construction tolerance; pin the top level.
    pieces_.back().above = 1.0;
    for (auto& p : pieces_) p.above = std::min(p.above, 1.0);
    for (std::size_t j = 1; j < pieces_.size(); ++j) pieces_[j].below = pieces_[j - 1].above;
  }

  MeasureSpec<S> spec_;
  std::vector<Piece<point_type>> pieces_;
};

// Compares F on the first `budget` points of the dense enumeration and on
// every atom of either measure.
template <class P>
struct DenseComparison {
  bool indistinguishable = true;
  std::optional<P> witness;
  double F_first = 0.0;
  double F_second = 0.0;
};

template <OrderedSpace S>
DenseComparison<typename S::point_type> cdfs_equal_on_dense(const Cdf<S>& a, const Cdf<S>& b,
                                                            std::size_t budget = 4096,
                                                            double tolerance = 1e-12) {
  if (!(a.space() == b.space())) throw DomainError("cdfs live on different spaces");
  auto probes = a.space().dense_points(budget);
  for (const auto& at : a.spec().atoms()) probes.push_back(at.at);
  for (const auto& at : b.spec().atoms()) probes.push_back(at.at);
  for (const auto& x : probes) {
    const double fa = a.eval_F(x);
    const double fb = b.eval_F(x);
    if (std::abs(fa - fb) > tolerance) return {false, x, fa, fb};
  }
  return {};
}

template <class P>
struct UniquenessVerdict {
  bool equal = true;
  std::optional<Interval<P>> witness;
  double measure_first = 0.0;
  double measure_second = 0.0;
};

// Same cdf ⇒ same measure. F and F⁻ are compared through the interval
// formulas on the partition cut by both measures' breakpoints (plus a few
// dense points per chunk); when they agree, measure_of is compared on
// `trials` random interval unions.
template <OrderedSpace S>
UniquenessVerdict<typename S::point_type> measure_uniqueness_check(const Cdf<S>& a,
                                                                   const Cdf<S>& b,
                                                                   std::size_t trials = 10000,
                                                                   std::uint64_t seed = 7,
                                                                   double tolerance = 1e-9) {
  using P = typename S::point_type;
  const auto& space = a.space();
  if (!(space == b.space())) throw DomainError("measures live on different spaces");

  std::vector<P> cuts = a.breakpoints();
  const auto more = b.breakpoints();
  cuts.insert(cuts.end(), more.begin(), more.end());
  if constexpr (ContinuumSpace<S>) {
    const auto dense = space.dense_points(16 * space.chunk_count());
    cuts.insert(cuts.end(), dense.begin(), dense.end());
  }
  std::sort(cuts.begin(), cuts.end(),
            [&](const P& x, const P& y) { return space.compare(x, y) < 0; });
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [&](const P& x, const P& y) { return space.compare(x, y) == 0; }),
             cuts.end());

  std::vector<IntervalOf<S>> cells;
  ExtPoint<S> prev = ExtPoint<S>::neg_inf();
  for (const auto& c : cuts) {
    cells.push_back(IntervalOf<S>::open(prev, c));
    cells.push_back(IntervalOf<S>::singleton(c));
    prev = c;
  }
  cells.push_back(IntervalOf<S>::open(prev, ExtPoint<S>::pos_inf()));
  for (const auto& cell : cells) {
    const auto c = canonical(space, cell);
    if (!c) continue;
    const double ma = a.interval_measure(*c);
    const double mb = b.interval_measure(*c);
    if (std::abs(ma - mb) > tolerance) return {false, *c, ma, mb};
  }

  Prober<S> prober(space, seed, cuts);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto u = prober.union_of();
    const double ma = a.spec().measure_of(u);
    const double mb = b.spec().measure_of(u);
    if (std::abs(ma - mb) > tolerance) {
      // report the first offending piece of u
      for (const auto& iv : u.intervals()) {
        const double pa = a.spec().measure_of(iv);
        const double pb = b.spec().measure_of(iv);
        if (std::abs(pa - pb) > tolerance) return {false, iv, pa, pb};
      }
      return {false, u.intervals().front(), ma, mb};
    }
  }
  return {};
}

}  // namespace ordercdf
