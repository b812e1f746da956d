#pragma once

// Randomized check of every cdf / pseudo-inverse proposition against a
// CdfView: F, F⁻, G, atom masses and μ given as plain functions. A view is
// normally built from a PseudoInverse, but tests can hand in a doctored one
// to confirm that the suite actually catches violations.

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ordercdf/oracle/finite_case.hpp"
#include "ordercdf/probes.hpp"
#include "ordercdf/pseudo_inverse.hpp"
#include "ordercdf/sampling.hpp"

namespace ordercdf::oracle {

enum class Status : std::uint8_t { pass, fail, skip };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

struct PropositionResult {
  std::string name;
  Status status = Status::pass;
  std::size_t checks = 0;
  std::string witness{};  // first counterexample, or why the check was skipped
};

struct SuiteReport {
  std::string instance;
  std::vector<PropositionResult> results;

  bool all_pass() const {
    return std::none_of(results.begin(), results.end(),
                        [](const auto& r) { return r.status == Status::fail; });
  }
  const PropositionResult* find(std::string_view name) const {
    for (const auto& r : results) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }
};

template <OrderedSpace S>
struct CdfView {
  using P = typename S::point_type;

  S space;
  std::function<double(const P&)> F{};
  std::function<double(const P&)> F_minus{};
  std::function<double(const P&)> atom_mass{};
  std::function<std::optional<P>(double)> G{};
  std::function<double(const UnionOf<S>&)> measure{};
  // Lebesgue length of G⁻¹(u); empty when G is not total.
  std::function<double(const UnionOf<S>&)> preimage_length{};
  // (segment index, density) of the segment holding x, if any
  std::function<std::optional<std::pair<std::size_t, double>>(const P&)> segment_at{};
  std::vector<Atom<P>> atoms{};
  std::vector<P> special{};
  std::vector<double> special_levels{};
  double max_density = 0.0;
};

template <OrderedSpace S>
CdfView<S> make_view(const PseudoInverse<S>& gi_in) {
  using P = typename S::point_type;
  auto gi = std::make_shared<const PseudoInverse<S>>(gi_in);
  CdfView<S> v{gi->space()};
  v.F = [gi](const P& x) { return gi->cdf().eval_F(x); };
  v.F_minus = [gi](const P& x) { return gi->cdf().eval_F_minus(x); };
  v.atom_mass = [gi](const P& x) { return gi->cdf().atom_mass(x); };
  v.G = [gi](double r) -> std::optional<P> {
    auto q = gi->eval_G(r);
    if (!q) return std::nullopt;
    return q.point();
  };
  v.measure = [gi](const UnionOf<S>& u) { return gi->cdf().spec().measure_of(u); };
  if (gi->is_total()) {
    v.preimage_length = [gi](const UnionOf<S>& u) { return pushforward_check(*gi, u).preimage_length; };
  }
  v.segment_at = [gi](const P& x) -> std::optional<std::pair<std::size_t, double>> {
    if constexpr (ContinuumSpace<S>) {
      const auto& sp = gi->space();
      const auto& spec = gi->cdf().spec();
      for (std::size_t k = 0; k < spec.segments().size(); ++k) {
        const auto& span = spec.spans()[k];
        const double c = sp.coordinate(x);
        if (sp.chunk_of(x) == span.chunk && c >= span.lo && c <= span.hi) {
          return std::pair{k, spec.segments()[k].mass / span.length()};
        }
      }
    }
    (void)x;
    return std::nullopt;
  };
  v.atoms = gi->cdf().spec().atoms();
  v.special = gi->cdf().breakpoints();
  for (const auto& p : gi->cdf().pieces()) {
    v.special_levels.push_back(p.below);
    v.special_levels.push_back(p.above);
    v.max_density = std::max(v.max_density, p.density());
  }
  return v;
}

struct SuiteBudget {
  std::size_t points = 2000;  // random probe points
  std::size_t pairs = 10000;  // random (r, x) and (x, y) pairs
  std::size_t unions = 1000;  // random interval unions
  std::uint64_t seed = 20240611;
  double tolerance = 1e-12;
};

namespace detail {

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }

  template <class W>
  void check(bool ok, W&& witness) {
    ++r_.checks;
    if (!ok && r_.status != Status::fail) {
      r_.status = Status::fail;
      r_.witness = witness();
    }
  }
  void skip(std::string why) {
    r_.status = Status::skip;
    r_.witness = std::move(why);
  }
  PropositionResult done() && {
    if (r_.status == Status::pass && r_.checks == 0) r_.status = Status::skip;
    return std::move(r_);
  }

 private:
  PropositionResult r_;
};

inline std::string num(double v) { return text::format_value(v); }

}  // namespace detail

namespace detail {

template <OrderedSpace S>
void run_suite(const CdfView<S>& v, SuiteReport& report, const SuiteBudget& budget) {
  using P = typename S::point_type;
  const S& sp = v.space;
  const double tol = budget.tolerance;
  auto emit = [&](Tally&& t) { report.results.push_back(std::move(t).done()); };
  auto fmt = [&](const P& x) { return sp.format(x); };
  auto lt = [&](const P& a, const P& b) { return sp.compare(a, b) < 0; };
  auto le = [&](const P& a, const P& b) { return sp.compare(a, b) <= 0; };

  Prober<S> pr(sp, budget.seed, v.special, v.special_levels);
  std::vector<P> pts = v.special;
  for (std::size_t i = 0; i < budget.points; ++i) pts.push_back(pr.point());

  auto atoms_in = [&](const P& lo, bool lo_closed, const P& hi, bool hi_closed) {
    double m = 0.0;
    for (const auto& a : v.atoms) {
      const auto cl = sp.compare(lo, a.at), ch = sp.compare(a.at, hi);
      if ((cl < 0 || (cl == 0 && lo_closed)) && (ch < 0 || (ch == 0 && hi_closed))) m += a.mass;
    }
    return m;
  };
  const auto dense = sp.dense_points(budget.points);

  // ---- cdf ----------------------------------------------------------------
  {
    Tally t("F is monotone");
    for (std::size_t i = 0; i < budget.pairs; ++i) {
      auto x = pr.point(), y = pr.point();
      if (lt(y, x)) std::swap(x, y);
      t.check(v.F(x) <= v.F(y), [&] { return "F(" + fmt(x) + ") > F(" + fmt(y) + ")"; });
    }
    emit(std::move(t));
  }

  constexpr double ladder[] = {1e-3, 1e-6, 1e-9};
  {
    Tally right("F is right-continuous");
    Tally left("F(x-h) tends to F-(x)");
    if constexpr (ContinuumSpace<S>) {
      for (const auto& x : pts) {
        const auto c = sp.chunk_of(x);
        const auto b = sp.chunk_bounds(c);
        const double cx = sp.coordinate(x);
        for (double h : ladder) {
          const double step = h * std::max(1.0, b.hi - b.lo);
          if (cx + step <= b.hi && sp.contains(sp.at(c, cx + step)) && lt(x, sp.at(c, cx + step))) {
            const P y = sp.at(c, cx + step);
            const double d = v.F(y) - v.F(x);
            const double bound = v.max_density * step + atoms_in(x, false, y, true) + tol;
            right.check(d >= -tol && d <= bound, [&] {
              return "F(" + fmt(y) + ") - F(" + fmt(x) + ") = " + num(d) + " > " + num(bound);
            });
          }
          if (cx - step >= b.lo && sp.contains(sp.at(c, cx - step)) && lt(sp.at(c, cx - step), x)) {
            const P y = sp.at(c, cx - step);
            const double d = v.F_minus(x) - v.F(y);
            const double bound = v.max_density * step + atoms_in(y, false, x, false) + tol;
            left.check(d >= -tol && d <= bound, [&] {
              return "F-(" + fmt(x) + ") - F(" + fmt(y) + ") = " + num(d) + " > " + num(bound);
            });
          }
        }
      }
    } else {
      right.skip("every point is right-isolated");
      left.skip("every point is left-isolated");
    }
    emit(std::move(right));
    emit(std::move(left));
  }

  {
    Tally t("inf F-(X) = 0 and sup F(X) = 1");
    if (auto m = sp.min()) {
      t.check(v.F_minus(*m) == 0.0, [&] { return "F-(min X) = " + num(v.F_minus(*m)); });
    } else {
      double lowest = 1.0;
      for (int k = 1; k <= 40; ++k) lowest = std::min(lowest, v.F(sp.point_at_fraction(std::ldexp(1.0, -k))));
      t.check(lowest <= 1e-6, [&] { return "F stays above " + num(lowest) + " toward the bottom"; });
    }
    if (auto m = sp.max()) {
      t.check(v.F(*m) == 1.0, [&] { return "F(max X) = " + num(v.F(*m)); });
    } else {
      double highest = 0.0;
      for (int k = 1; k <= 40; ++k) {
        highest = std::max(highest, v.F(sp.point_at_fraction(1.0 - std::ldexp(1.0, -k))));
      }
      t.check(highest >= 1.0 - 1e-6, [&] { return "F stays below " + num(highest) + " toward the top"; });
    }
    emit(std::move(t));
  }

  {
    Tally sup("sup F(<x) = F-(x)");
    Tally inf("F(x) = inf F-(>x)");
    for (std::size_t i = 0; i < std::min<std::size_t>(pts.size(), 400); ++i) {
      const auto& x = pts[i];
      std::vector<P> cands(dense.begin(), dense.end());
      for (const auto& a : v.atoms) cands.push_back(a.at);
      for (const auto& s : v.special) cands.push_back(s);
      if (auto d = sp.step_down(x)) cands.push_back(*d);
      if (auto u = sp.step_up(x)) cands.push_back(*u);
      if (!(sp.min() && sp.compare(*sp.min(), x) == 0)) {
        double best = 0.0;
        for (const auto& y : cands) {
          if (lt(y, x)) best = std::max(best, v.F(y));
        }
        const double fm = v.F_minus(x);
        sup.check(std::abs(best - fm) <= 1e-9, [&] {
          return "x = " + fmt(x) + ": sup F(<x) = " + num(best) + ", F-(x) = " + num(fm);
        });
      }
      if (!(sp.max() && sp.compare(*sp.max(), x) == 0)) {
        double best = 1.0;
        for (const auto& y : cands) {
          if (lt(x, y)) best = std::min(best, v.F_minus(y));
        }
        const double f = v.F(x);
        inf.check(std::abs(best - f) <= 1e-9, [&] {
          return "x = " + fmt(x) + ": inf F-(>x) = " + num(best) + ", F(x) = " + num(f);
        });
      }
    }
    emit(std::move(sup));
    emit(std::move(inf));
  }

  {
    Tally jump("F(x) = F-(x) + mu({x})");
    Tally cont("mu({x}) = 0 implies F continuous at x");
    Tally atoms("F-(x) <= F(x)");
    for (const auto& x : pts) {
      const double f = v.F(x), fm = v.F_minus(x), m = v.atom_mass(x);
      jump.check(std::abs(f - (fm + m)) <= tol, [&] {
        return "x = " + fmt(x) + ": F = " + num(f) + ", F- = " + num(fm) + ", mass = " + num(m);
      });
      atoms.check(fm <= f, [&] { return "x = " + fmt(x) + ": F- = " + num(fm) + " > F = " + num(f); });
      if (m == 0.0) {
        cont.check(f - fm <= tol, [&] { return "F jumps by " + num(f - fm) + " at atomless " + fmt(x); });
      }
    }
    emit(std::move(jump));
    emit(std::move(cont));
    emit(std::move(atoms));
  }

  {
    struct Formula {
      const char* name;
      bool lo_closed, hi_closed;
    };
    const Formula formulas[] = {{"mu(]a,b]) = F(b) - F(a)", false, true},
                                {"mu([a,b]) = F(b) - F-(a)", true, true},
                                {"mu(]a,b[) = F-(b) - F(a)", false, false},
                                {"mu([a,b[) = F-(b) - F-(a)", true, false}};
    for (const auto& f : formulas) {
      Tally t(f.name);
      for (std::size_t i = 0; i < budget.pairs / 4; ++i) {
        auto a = pr.point(), b = pr.point();
        if (lt(b, a)) std::swap(a, b);
        if (!lt(a, b)) continue;
        const double lower = f.lo_closed ? v.F_minus(a) : v.F(a);
        const double upper = f.hi_closed ? v.F(b) : v.F_minus(b);
        const IntervalOf<S> iv{a, b, f.lo_closed, f.hi_closed};
        const double mu = v.measure(normalize(sp, {iv}));
        t.check(std::abs((upper - lower) - mu) <= tol, [&] {
          return "a = " + fmt(a) + ", b = " + fmt(b) + ": formula " + num(upper - lower) + ", mu " + num(mu);
        });
      }
      emit(std::move(t));
    }
  }

  {
    Tally t("mu is additive on the interval algebra");
    for (std::size_t i = 0; i < budget.unions; ++i) {
      const auto u = pr.union_of(), w = pr.union_of();
      const double mu = v.measure(u), mw = v.measure(w);
      const double mc = v.measure(complement(sp, u));
      const double mj = v.measure(unite(sp, u, w)), mi = v.measure(intersect(sp, u, w));
      t.check(std::abs(mu + mc - 1.0) <= 1e-12 && std::abs(mj + mi - mu - mw) <= 1e-12, [&] {
        return "u = " + format_union(sp, u) + ", w = " + format_union(sp, w);
      });
    }
    emit(std::move(t));
  }

  // ---- pseudo-inverse -----------------------------------------------------
  auto Gd = [&](double r) { return v.G(r); };
  {
    Tally mono("G is monotone");
    Tally defl("G(F(x)) <= x");
    Tally infl("F(G(r)) >= r");
    Tally galois("G(r) <= x iff r <= F(x)");
    Tally strict("F(x) < r iff G(r) > x");
    Tally below("r < F-(x) implies G(r) < x");
    Tally at("r = F-(x) implies G(r) <= x");
    Tally back("G(r) < x implies r <= F-(x)");
    Tally sandwich("F-(G(r)) <= r <= F(G(r))");
    Tally atom("F(G(r)) > r implies mu({G(r)}) > 0");
    Tally exact("mu({G(r)}) = 0 implies F(G(r)) = r");
    for (std::size_t i = 0; i < budget.pairs; ++i) {
      double r = pr.level(), s = pr.level();
      if (s < r) std::swap(r, s);
      const auto gr = Gd(r), gs = Gd(s);
      if (gr && gs) {
        mono.check(le(*gr, *gs), [&] { return "G(" + num(r) + ") > G(" + num(s) + ")"; });
      }
      const P x = (i % 2) ? pr.point() : (gr ? *gr : pr.point());
      const double fx = v.F(x), fmx = v.F_minus(x);
      if (auto g = Gd(fx)) {
        defl.check(le(*g, x), [&] { return "G(F(" + fmt(x) + ")) = " + fmt(*g); });
      }
      if (gr) {
        const auto& g = *gr;
        const double fg = v.F(g), fmg = v.F_minus(g);
        infl.check(fg >= r, [&] { return "F(G(" + num(r) + ")) = " + num(fg); });
        galois.check(le(g, x) == (r <= fx), [&] {
          return "r = " + num(r) + ", x = " + fmt(x) + ", G(r) = " + fmt(g) + ", F(x) = " + num(fx);
        });
        strict.check((fx < r) == lt(x, g), [&] {
          return "r = " + num(r) + ", x = " + fmt(x) + ", G(r) = " + fmt(g) + ", F(x) = " + num(fx);
        });
        // F⁻ at an atomless point is F there, and F only takes finitely many
        // doubles: a level strictly between two consecutive values cannot be
        // hit, so the comparisons against F⁻ carry the level tolerance.
        if (r < fmx - tol) below.check(lt(g, x), [&] { return "r = " + num(r) + ", x = " + fmt(x); });
        if (lt(g, x)) back.check(r <= fmx + tol, [&] { return "r = " + num(r) + ", x = " + fmt(x); });
        sandwich.check(fmg <= r + tol && r <= fg, [&] {
          return "r = " + num(r) + ": F-(G(r)) = " + num(fmg) + ", F(G(r)) = " + num(fg);
        });
        if (fg > r + tol) {
          atom.check(v.atom_mass(g) > 0.0, [&] { return "r = " + num(r) + ", G(r) = " + fmt(g); });
        }
        if (v.atom_mass(g) == 0.0) {
          exact.check(std::abs(fg - r) <= tol, [&] { return "r = " + num(r) + ": F(G(r)) = " + num(fg); });
        }
      }
      if (auto g = Gd(fmx)) {
        at.check(le(*g, x), [&] { return "x = " + fmt(x) + ", G(F-(x)) = " + fmt(*g); });
      }
    }
    for (auto* t : {&mono, &defl, &infl, &galois, &strict, &below, &at, &back, &sandwich, &atom, &exact}) {
      emit(std::move(*t));
    }
  }

  {
    Tally t("F-(x) < r <= F(x) implies G(r) = x");
    for (const auto& a : v.atoms) {
      const double lo = v.F_minus(a.at), hi = v.F(a.at);
      for (int k = 1; k <= 16; ++k) {
        const double r = k == 16 ? hi : lo + (hi - lo) * (static_cast<double>(k) / 16.0);
        if (!(r > lo)) continue;
        const auto g = Gd(r);
        t.check(g && sp.compare(*g, a.at) == 0, [&] {
          return "r = " + num(r) + " in the plateau of " + fmt(a.at) + " maps to " +
                 (g ? fmt(*g) : std::string("undefined"));
        });
      }
    }
    emit(std::move(t));
  }

  {
    Tally t("G is left-continuous");
    for (std::size_t i = 0; i < budget.points; ++i) {
      const double r = pr.unit();
      const auto g = Gd(r);
      if (!g) continue;
      const double mass = v.atom_mass(*g);
      if (mass > 0.0) {
        // on a plateau: G(r - h) = G(r) once r - h stays above F-(G(r))
        const double fm = v.F_minus(*g);
        for (double h : ladder) {
          if (r - h <= fm) continue;
          const auto gh = Gd(r - h);
          t.check(gh && sp.compare(*gh, *g) == 0, [&] {
            return "G(" + num(r - h) + ") != G(" + num(r) + ") = " + fmt(*g);
          });
        }
        continue;
      }
      if constexpr (ContinuumSpace<S>) {
        const auto seg = v.segment_at(*g);
        if (!seg || seg->second <= 0.0) continue;
        for (double h : ladder) {
          if (r - h < 0.0) continue;
          const auto gh = Gd(r - h);
          if (!gh) continue;
          const auto seg_h = v.segment_at(*gh);
          // the ladder only applies while r - h stays on the same affine piece
          if (!seg_h || seg_h->first != seg->first || v.atom_mass(*gh) > 0.0 ||
              atoms_in(*gh, true, *g, false) > 0.0) {
            continue;
          }
          const double gap = sp.coordinate(*g) - sp.coordinate(*gh);
          const double bound = h / seg->second + 1e-12;
          t.check(gap >= 0.0 && gap <= bound, [&] {
            return "G(" + num(r) + ") - G(" + num(r - h) + ") = " + num(gap) + " > " + num(bound);
          });
        }
      }
    }
    emit(std::move(t));
  }

  {
    Tally t("G^-1(]a,b[) lies between ]F(a),F-(b)[ and ]F(a),F-(b)]");
    for (std::size_t i = 0; i < budget.pairs / 10; ++i) {
      auto a = pr.point(), b = pr.point();
      if (lt(b, a)) std::swap(a, b);
      if (!lt(a, b)) continue;
      const double fa = v.F(a), fmb = v.F_minus(b);
      std::vector<double> rs{fa, fmb, std::nextafter(fa, 1.0), std::nextafter(fmb, 0.0)};
      for (int k = 0; k < 8; ++k) rs.push_back(pr.level());
      for (double r : rs) {
        if (!(r >= 0.0 && r <= 1.0)) continue;
        const auto g = Gd(r);
        if (!g) continue;
        const bool in_pre = lt(a, *g) && lt(*g, b);
        const bool in_open = fa < r && r < fmb - tol;
        const bool in_half = fa < r && r <= fmb + tol;
        t.check((!in_open || in_pre) && (!in_pre || in_half), [&] {
          return "a = " + fmt(a) + ", b = " + fmt(b) + ", r = " + num(r) + ", G(r) = " + fmt(*g);
        });
      }
    }
    emit(std::move(t));
  }

  {
    Tally t("mu(A) = l(G^-1(A))");
    if (!v.preimage_length) {
      t.skip("G is not total on [0,1]");
    } else {
      for (std::size_t i = 0; i < budget.unions; ++i) {
        const auto u = pr.union_of();
        const double mu = v.measure(u), len = v.preimage_length(u);
        t.check(std::abs(mu - len) <= 1e-9, [&] {
          return "A = " + format_union(sp, u) + ": mu " + num(mu) + ", length " + num(len);
        });
      }
    }
    emit(std::move(t));
  }
}

}  // namespace detail

// A view that throws (e.g. levels outside [0,1] reaching G) fails the suite
// instead of aborting it; the propositions evaluated so far are kept.
template <OrderedSpace S>
SuiteReport check_proposition_suite(const CdfView<S>& v, std::string instance,
                                    const SuiteBudget& budget = {}) {
  SuiteReport report{std::move(instance), {}};
  try {
    detail::run_suite(v, report, budget);
  } catch (const std::exception& e) {
    report.results.push_back({"suite runs to completion", Status::fail, 1, e.what()});
  }
  return report;
}

template <OrderedSpace S>
SuiteReport check_proposition_suite(const PseudoInverse<S>& gi, std::string instance,
                                    const SuiteBudget& budget = {}) {
  return check_proposition_suite(make_view(gi), std::move(instance), budget);
}

// On a finite case the interval formulas are also compared with the power-set
// table on every interval of X, including unbounded ones.
template <OrderedSpace S>
SuiteReport check_proposition_suite(const FiniteCase<S>& c, std::string instance,
                                    const SuiteBudget& budget = {}) {
  const PseudoInverse<S> gi(c.spec());
  auto report = check_proposition_suite(gi, std::move(instance), budget);
  const auto table = enumerate_subset_measures(c);
  const auto& sp = c.space();
  PropositionResult res{"interval_measure matches the subset table"};
  std::vector<ExtPoint<S>> ends{ExtPoint<S>::neg_inf(), ExtPoint<S>::pos_inf()};
  for (const auto& p : c.points()) ends.push_back(p);
  for (const auto& lo : ends) {
    for (const auto& hi : ends) {
      for (int flags = 0; flags < 4; ++flags) {
        IntervalOf<S> iv{lo, hi, (flags & 1) != 0, (flags & 2) != 0};
        if (!lo.is_point()) iv.lo_closed = false;
        if (!hi.is_point()) iv.hi_closed = false;
        const double got = gi.cdf().interval_measure(iv);
        const double want = table[c.mask_of(normalize(sp, {iv}))].measure;
        ++res.checks;
        if (std::abs(got - want) > 1e-12 && res.status != Status::fail) {
          res.status = Status::fail;
          res.witness = format_interval(sp, iv) + ": " + detail::num(got) + " vs " + detail::num(want);
        }
      }
    }
  }
  report.results.push_back(std::move(res));
  return report;
}

}  // namespace ordercdf::oracle
