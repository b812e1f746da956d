#pragma once

// The pseudo-inverse G(r) = inf {y : F(y) >= r}.
//
// G is read off the cdf's piece table: the first piece whose cumulative level
// reaches r either is an atom (G is constant there) or a density piece, where
// G is affine in r. On real coordinates the affine value is corrected to the
// smallest double c with F(c) >= r, so G(r) <= x ⇔ r <= F(x) holds exactly in
// floating point, not just up to rounding.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordercdf/cdf.hpp"
#include "ordercdf/errors.hpp"
#include "ordercdf/interval_syntax.hpp"
#include "ordercdf/interval_union.hpp"
#include "ordercdf/spaces/text.hpp"

namespace ordercdf {

// A subinterval of [0,1].
struct LevelInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  static LevelInterval empty_set() { return {}; }
  static LevelInterval point(double r) { return {r, r, true, true}; }

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  double length() const { return empty() ? 0.0 : hi - lo; }
  bool contains(double r) const {
    if (empty()) return false;
    if (r < lo || (r == lo && !lo_closed)) return false;
    if (r > hi || (r == hi && !hi_closed)) return false;
    return true;
  }

  bool operator==(const LevelInterval&) const = default;
};

inline std::string format_levels(const LevelInterval& l) {
  if (l.empty()) return "{}";
  return std::string(l.lo_closed ? "[" : "(") + text::format_value(l.lo) + "," +
         text::format_value(l.hi) + (l.hi_closed ? "]" : ")");
}

// Lebesgue length of a finite union of level intervals.
inline double lebesgue_length(std::vector<LevelInterval> ls) {
  std::erase_if(ls, [](const LevelInterval& l) { return l.empty(); });
  std::sort(ls.begin(), ls.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  double total = 0.0;
  double cur_lo = 0.0, cur_hi = -1.0;
  for (const auto& l : ls) {
    if (l.lo > cur_hi) {
      if (cur_hi > cur_lo) total += cur_hi - cur_lo;
      cur_lo = l.lo;
      cur_hi = l.hi;
    } else {
      cur_hi = std::max(cur_hi, l.hi);
    }
  }
  if (cur_hi > cur_lo) total += cur_hi - cur_lo;
  return total;
}

// G(r): a point, or "undefined" carrying why the infimum does not exist.
template <class P>
class Quantile {
 public:
  static Quantile defined(P p) {
    Quantile q;
    q.point_ = std::move(p);
    return q;
  }
  static Quantile undefined(std::string reason) {
    Quantile q;
    q.reason_ = std::move(reason);
    return q;
  }

  bool is_defined() const noexcept { return point_.has_value(); }
  explicit operator bool() const noexcept { return is_defined(); }

  const P& point() const {
    if (!point_) throw DomainError("G is undefined here: " + reason_);
    return *point_;
  }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::optional<P> point_;
  std::string reason_;
};

// A = [0,1] minus finitely many levels.
struct LevelDomain {
  std::vector<double> excluded;

  bool total() const { return excluded.empty(); }
  bool contains(double r) const {
    return r >= 0.0 && r <= 1.0 && std::find(excluded.begin(), excluded.end(), r) == excluded.end();
  }
  std::string describe() const {
    if (excluded.empty()) return "[0,1]";
    std::string s = "[0,1] \\ {";
    for (std::size_t i = 0; i < excluded.size(); ++i) {
      if (i) s += ",";
      s += text::format_value(excluded[i]);
    }
    return s + "}";
  }
};

template <class P>
struct GaloisOutcome {
  bool applicable = true;  // false when G(r) is undefined
  bool g_le_x = false;     // G(r) <= x
  bool r_le_F = false;     // r <= F(x)
  std::string reason;

  bool holds() const { return !applicable || g_le_x == r_le_F; }
};

template <class P>
struct SandwichOutcome {
  P point;
  double lo = 0.0;  // F⁻(G(r))
  double hi = 0.0;  // F(G(r))
  bool within = false;
  bool atom_required = false;   // hi > r
  bool atom_confirmed = false;  // μ({G(r)}) > 0

  bool holds() const { return within && (!atom_required || atom_confirmed); }
};

// G⁻¹(]a,b[) with the closure actually found at the right end.
struct PreimageInterval {
  LevelInterval levels;
  bool right_end_included = false;
};

template <class P>
struct InjectivityVerdict {
  bool injective = true;
  std::optional<Interval<P>> null_witness;  // F: a null interval ]a,b]
  LevelInterval level_witness;              // G: a plateau
};

struct ConditionVerdict {
  bool holds = false;
  std::string evidence;
};

// The four equivalent conditions, each evaluated on its own.
struct BijectivityReport {
  ConditionVerdict inverse_pair;     // (1) F∘G = id on A, F(X) ⊆ A, G∘F = id on X
  ConditionVerdict f_onto_domain;    // (2) F injective and F(X) = A
  ConditionVerdict g_bijective;      // (3) G: A → X bijective
  ConditionVerdict support_no_atoms; // (4) μ(]a,b]) > 0 for a < b, no atoms

  bool consistent() const {
    const bool h = inverse_pair.holds;
    return f_onto_domain.holds == h && g_bijective.holds == h && support_no_atoms.holds == h;
  }
  bool all_hold() const { return consistent() && inverse_pair.holds; }
};

namespace detail {

inline std::uint64_t order_key(double d) {
  const auto bits = std::bit_cast<std::uint64_t>(d);
  return (bits >> 63) ? ~bits : bits | (std::uint64_t{1} << 63);
}
inline double from_order_key(std::uint64_t k) {
  return std::bit_cast<double>((k >> 63) ? k & ~(std::uint64_t{1} << 63) : ~k);
}

// Smallest double c in ]lo, hi] with pred(c), given pred(hi) and !pred(lo).
template <class Pred>
double smallest_satisfying(double lo, double hi, Pred pred) {
  std::uint64_t a = order_key(lo), b = order_key(hi);  // pred false at a, true at b
  while (b - a > 1) {
    const std::uint64_t m = a + (b - a) / 2;
    if (pred(from_order_key(m))) b = m;
    else a = m;
  }
  return from_order_key(b);
}

// Equality up to `tol` of the chunk width on real chunks; exact otherwise.
template <OrderedSpace S>
bool nearly_same_point(const S& space, const typename S::point_type& x,
                       const typename S::point_type& y, double tol = 1e-9) {
  if (space.compare(x, y) == 0) return true;
  if constexpr (ContinuumSpace<S>) {
    const auto c = space.chunk_of(x);
    if (c != space.chunk_of(y)) return false;
    const auto b = space.chunk_bounds(c);
    return std::abs(space.coordinate(x) - space.coordinate(y)) <= tol * std::max(1.0, b.hi - b.lo);
  }
  return false;
}

}  // namespace detail

template <OrderedSpace S>
class PseudoInverse {
 public:
  using space_type = S;
  using point_type = typename S::point_type;

  explicit PseudoInverse(Cdf<S> cdf) : cdf_(std::move(cdf)) { build(); }
  explicit PseudoInverse(MeasureSpec<S> spec) : PseudoInverse(Cdf<S>(std::move(spec))) {}

  const Cdf<S>& cdf() const noexcept { return cdf_; }
  const S& space() const noexcept { return cdf_.space(); }
  const LevelDomain& domain() const noexcept { return domain_; }
  bool is_total() const noexcept { return domain_.total(); }

  Quantile<point_type> eval_G(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw DomainError("level " + text::format_value(r) + " is outside [0,1]");
    }
    if (r == 0.0) {
      if (auto m = space().min()) return Quantile<point_type>::defined(*m);
      return Quantile<point_type>::undefined(
          "G(0) = inf X, and X has no least element");
    }
    const auto& pieces = cdf_.pieces();
    const auto j = static_cast<std::size_t>(
        std::partition_point(pieces.begin(), pieces.end(),
                             [&](const auto& p) { return p.above < r; }) -
        pieces.begin());
    const auto& p = pieces[std::min(j, pieces.size() - 1)];
    if (p.is_atom()) return Quantile<point_type>::defined(p.start);
    if constexpr (ContinuumSpace<S>) {
      const double c = solve(j, r);
      if (c < p.span.hi) return Quantile<point_type>::defined(space().at(p.span.chunk, c));
      if (end_sup_[j]) return Quantile<point_type>::defined(*end_sup_[j]);
      return Quantile<point_type>::undefined(undefined_reason_[j]);
    }
    return Quantile<point_type>::undefined("no piece reaches level " + text::format_value(r));
  }

  // (G(r) <= x) against (r <= F(x)).
  GaloisOutcome<point_type> galois_check(double r, const point_type& x) const {
    require_member(space(), x);
    const auto g = eval_G(r);
    GaloisOutcome<point_type> out;
    out.r_le_F = r <= cdf_.eval_F(x);
    if (!g) {
      out.applicable = false;
      out.reason = g.reason();
      return out;
    }
    out.g_le_x = space().compare(g.point(), x) <= 0;
    return out;
  }

  // F⁻(G(r)) <= r <= F(G(r)), and an atom at G(r) whenever F(G(r)) > r.
  SandwichOutcome<point_type> sandwich_check(double r) const {
    const auto g = eval_G(r);
    const auto& x = g.point();  // throws when undefined
    SandwichOutcome<point_type> out{x};
    out.lo = cdf_.eval_F_minus(x);
    out.hi = cdf_.eval_F(x);
    out.within = out.lo <= r && r <= out.hi;
    out.atom_required = out.hi > r;
    out.atom_confirmed = cdf_.atom_mass(x) > 0.0;
    return out;
  }

  // ]F⁻(x), F(x)]: every level inside maps to x. Empty unless x is an atom.
  LevelInterval plateau_of(const point_type& x) const {
    require_member(space(), x);
    if (!(cdf_.atom_mass(x) > 0.0)) return LevelInterval::empty_set();
    return {cdf_.eval_F_minus(x), cdf_.eval_F(x), false, true};
  }

  // G⁻¹(]a,b[) = ]F(a), F⁻(b)| ∩ A. The right end is included exactly when
  // G(F⁻(b)) lies in ]a,b[; the left end F(a) never is (G(F(a)) <= a), except
  // for a = −∞ where level 0 is included when G(0) exists and lies below b.
  PreimageInterval preimage_open_interval(const ExtPoint<S>& a, const ExtPoint<S>& b) const {
    if (compare_extended(space(), a, b) >= 0) throw DomainError("preimage_open_interval needs a < b");
    PreimageInterval out;
    auto& l = out.levels;
    l.lo = cdf_.F_at(a);
    l.hi = cdf_.F_minus_at(b);
    l.lo_closed = a.is_neg_inf() && inside(0.0, a, b);
    l.hi_closed = inside(l.hi, a, b);
    out.right_end_included = l.hi_closed;
    if (l.empty()) l = LevelInterval::empty_set();
    return out;
  }

  // G⁻¹({x}): the plateau for atoms, plus the single level F(x) when G maps
  // it to x.
  std::vector<LevelInterval> preimage_of_point(const point_type& x) const {
    std::vector<LevelInterval> out;
    if (auto pl = plateau_of(x); !pl.empty()) out.push_back(pl);
    const double r = cdf_.eval_F_minus(x);
    if (const auto g = eval_G(r); g && space().compare(g.point(), x) == 0) {
      out.push_back(LevelInterval::point(r));
    }
    return out;
  }

  // G⁻¹(u), piece by piece: each interval splits into its closed endpoints
  // and the open interval between them.
  std::vector<LevelInterval> preimage(const UnionOf<S>& u) const {
    std::vector<LevelInterval> out;
    auto add = [&](const std::vector<LevelInterval>& v) { out.insert(out.end(), v.begin(), v.end()); };
    for (const auto& iv : u.intervals()) {
      if (is_singleton(space(), iv)) {
        add(preimage_of_point(iv.lo.point()));
        continue;
      }
      if (iv.lo_closed) add(preimage_of_point(iv.lo.point()));
      if (iv.hi_closed) add(preimage_of_point(iv.hi.point()));
      if (auto p = preimage_open_interval(iv.lo, iv.hi); !p.levels.empty()) out.push_back(p.levels);
    }
    return out;
  }

  // G is injective iff μ has no atoms; the witness is an atom's plateau.
  InjectivityVerdict<point_type> is_G_injective() const {
    InjectivityVerdict<point_type> v;
    for (const auto& p : cdf_.pieces()) {
      if (!p.is_atom()) continue;
      v.injective = false;
      v.level_witness = plateau_of(p.start);
      break;
    }
    return v;
  }

  BijectivityReport bijectivity_report(std::size_t level_grid = 2048,
                                       std::size_t point_budget = 2048) const;

 private:
  bool inside(double r, const ExtPoint<S>& a, const ExtPoint<S>& b) const {
    const auto g = eval_G(r);
    if (!g) return false;
    const ExtPoint<S> e(g.point());
    return compare_extended(space(), a, e) < 0 && compare_extended(space(), e, b) < 0;
  }

  // Smallest coordinate c in ]lo, hi] of density piece j with F(c) >= r.
  double solve(std::size_t j, double r) const {
    const auto& p = cdf_.pieces()[j];
    const double lo = p.span.lo, hi = p.span.hi;
    auto ok = [&](double c) { return cdf_.level_in_piece(j, c) >= r; };
    const double t = (r - p.below) / (p.above - p.below);
    double c = std::clamp(lo + t * (hi - lo), std::nextafter(lo, hi), hi);
    for (int steps = 0; steps < 8; ++steps) {
      if (!ok(c)) {
        c = std::nextafter(c, hi);
        continue;
      }
      const double prev = std::nextafter(c, lo);
      if (prev > lo && ok(prev)) {
        c = prev;
        continue;
      }
      return c;
    }
    return detail::smallest_satisfying(lo, hi, ok);
  }

  void build() {
    const auto& pieces = cdf_.pieces();
    end_sup_.assign(pieces.size(), std::nullopt);
    undefined_reason_.assign(pieces.size(), std::string());
    if constexpr (ContinuumSpace<S>) {
      const auto& sp = space();
      for (std::size_t j = 0; j < pieces.size(); ++j) {
        const auto& p = pieces[j];
        if (!p.is_density()) continue;
        if (sp.contains(p.end)) {
          end_sup_[j] = p.end;
          continue;
        }
        const auto& seg = cdf_.spec().segments()[p.segment].interval;
        const auto s = supremum(sp, seg);
        if (s && s->is_point()) {
          end_sup_[j] = s->point();
        } else {
          undefined_reason_[j] = "{y : F(y) >= r} = " + format_interval(sp, IntervalOf<S>::above(p.end)) +
                                 " intersected with X has no least element (" +
                                 sp.format(p.end) + " is not in X)";
        }
      }
    }
    if (!eval_G(0.0)) domain_.excluded.push_back(0.0);
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (pieces[j].is_density() && !end_sup_[j] && !eval_G(pieces[j].above)) {
        domain_.excluded.push_back(pieces[j].above);
      }
    }
    std::sort(domain_.excluded.begin(), domain_.excluded.end());
    domain_.excluded.erase(std::unique(domain_.excluded.begin(), domain_.excluded.end()),
                           domain_.excluded.end());
  }

  Cdf<S> cdf_;
  std::vector<std::optional<point_type>> end_sup_;
  std::vector<std::string> undefined_reason_;
  LevelDomain domain_;
};

// F is injective iff μ(]a,b]) > 0 whenever a < b. The null region is the
// complement of the atoms and the open segment interiors; F fails to be
// injective exactly when one of its convex pieces has two points, or is a
// single point b with a predecessor a (then ]a,b] = {b} is null).
template <OrderedSpace S>
InjectivityVerdict<typename S::point_type> is_F_injective(const Cdf<S>& cdf) {
  using P = typename S::point_type;
  const auto& sp = cdf.space();
  std::vector<IntervalOf<S>> charged;
  for (const auto& a : cdf.spec().atoms()) charged.push_back(IntervalOf<S>::singleton(a.at));
  for (const auto& s : cdf.spec().segments()) {
    charged.push_back(IntervalOf<S>::open(s.interval.lo, s.interval.hi));
  }
  const auto null_region = complement(sp, normalize(sp, std::move(charged)));
  InjectivityVerdict<P> v;
  for (const auto& c : null_region.intervals()) {
    if (is_singleton(sp, c)) {
      const auto& b = c.lo.point();
      if (auto a = sp.predecessor(b)) {
        v.injective = false;
        v.null_witness = Interval<P>::left_open(*a, b);
        return v;
      }
      continue;
    }
    v.injective = false;
    auto w = c;
    w.lo_closed = false;
    v.null_witness = w;
    return v;
  }
  return v;
}

template <OrderedSpace S>
BijectivityReport PseudoInverse<S>::bijectivity_report(std::size_t level_grid,
                                                       std::size_t point_budget) const {
  using P = point_type;
  const auto& sp = space();
  BijectivityReport rep;

  // probe points: dense enumeration, breakpoints, atoms
  std::vector<P> pts = sp.dense_points(point_budget);
  const auto bps = cdf_.breakpoints();
  pts.insert(pts.end(), bps.begin(), bps.end());
  std::sort(pts.begin(), pts.end(), [&](const P& a, const P& b) { return sp.compare(a, b) < 0; });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](const P& a, const P& b) { return sp.compare(a, b) == 0; }),
            pts.end());

  // probe levels: a uniform grid plus both ends of every probe point's jump
  std::vector<double> levels;
  for (std::size_t k = 0; k <= level_grid; ++k) {
    levels.push_back(static_cast<double>(k) / static_cast<double>(level_grid));
  }
  for (const auto& x : pts) {
    const double f = cdf_.eval_F(x), fm = cdf_.eval_F_minus(x);
    levels.push_back(f);
    if (f > fm) levels.push_back(fm + (f - fm) / 2);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::erase_if(levels, [&](double r) { return !domain_.contains(r); });

  auto fmt = [&](const P& x) { return sp.format(x); };
  auto lvl = [](double r) { return text::format_value(r); };

  // shared observations
  std::optional<std::string> f_outside_A, gf_not_id, fg_not_id, f_collision, g_collision;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& x = pts[i];
    const double f = cdf_.eval_F(x);
    const auto g = eval_G(f);
    if (!g) {
      if (!f_outside_A) f_outside_A = "F(" + fmt(x) + ") = " + lvl(f) + " is not in A";
    } else if (!detail::nearly_same_point(sp, g.point(), x)) {
      if (!gf_not_id) gf_not_id = "G(F(" + fmt(x) + ")) = " + fmt(g.point());
    }
    if (i + 1 < pts.size() && cdf_.eval_F(pts[i + 1]) == f && !f_collision) {
      f_collision = "F(" + fmt(x) + ") = F(" + fmt(pts[i + 1]) + ") = " + lvl(f);
    }
  }
  std::optional<P> prev_g;
  double prev_r = 0.0;
  for (double r : levels) {
    const auto g = eval_G(r);
    const double fg = cdf_.eval_F(g.point());
    if (std::abs(fg - r) > 1e-12 && !fg_not_id) {
      fg_not_id = "F(G(" + lvl(r) + ")) = " + lvl(fg);
    }
    if (prev_g && r - prev_r > 1e-10 && sp.compare(*prev_g, g.point()) == 0 && !g_collision) {
      g_collision = "G(" + lvl(prev_r) + ") = G(" + lvl(r) + ") = " + fmt(g.point());
    }
    prev_g = g.point();
    prev_r = r;
  }

  auto verdict = [](std::initializer_list<const std::optional<std::string>*> fails,
                    const std::string& ok) {
    for (const auto* f : fails) {
      if (*f) return ConditionVerdict{false, **f};
    }
    return ConditionVerdict{true, ok};
  };
  rep.inverse_pair = verdict({&fg_not_id, &f_outside_A, &gf_not_id},
                             "F(G(r)) = r on every probe level, G(F(x)) = x on every probe point");
  rep.f_onto_domain = verdict({&f_collision, &f_outside_A, &fg_not_id},
                              "no F collisions among probe points; every probe level is a value of F");
  // G surjective: each probe x is hit by the level F(x)
  rep.g_bijective = verdict({&g_collision, &f_outside_A, &gf_not_id},
                            "no G collisions among probe levels; every probe point is a value of G");

  const auto fi = is_F_injective(cdf_);
  const auto gi = is_G_injective();
  if (!fi.injective) {
    rep.support_no_atoms = {false, "null interval " + format_interval(sp, *fi.null_witness)};
  } else if (!gi.injective) {
    const auto atom = eval_G(gi.level_witness.hi).point();
    rep.support_no_atoms = {false, "atom at " + fmt(atom) + " with plateau " + format_levels(gi.level_witness)};
  } else {
    rep.support_no_atoms = {true, "every ]a,b] charged and no atoms"};
  }
  return rep;
}

}  // namespace ordercdf
