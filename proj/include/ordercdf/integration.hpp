#pragma once

// ∫ g dμ = ∫₀¹ g(G(t)) dt. Atoms contribute mass·g(atom) exactly; each
// density piece is integrated in t by the composite midpoint rule. An
// integrand may declare break points (e.g. the ends of an indicator's
// support); their levels become extra cell boundaries, so a piecewise
// constant integrand is integrated exactly.

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "ordercdf/errors.hpp"
#include "ordercdf/pseudo_inverse.hpp"
#include "ordercdf/sampling.hpp"

namespace ordercdf {

struct QuadratureSpec {
  // Midpoint cells per density piece. Atoms are always exact point-mass terms.
  std::size_t subdivisions = 1000;

  void validate() const {
    if (subdivisions < 1) throw ConfigError("quadrature.subdivisions", "must be at least 1");
  }
};

template <class P>
struct Integrand {
  std::function<double(const P&)> fn;
  std::vector<P> breaks{};
  std::string name = "g";
};

namespace detail {

template <OrderedSpace S, class P>
double call_integrand(const S& space, const Integrand<P>& g, const P& x) {
  double v = 0.0;
  try {
    v = g.fn(x);
  } catch (const std::exception& e) {
    throw DomainError(g.name + " failed at " + space.format(x) + ": " + e.what());
  }
  if (!std::isfinite(v)) {
    throw DomainError(g.name + " is not finite at " + space.format(x));
  }
  return v;
}

}  // namespace detail

template <OrderedSpace S>
double integrate(const PseudoInverse<S>& gi, const Integrand<typename S::point_type>& g,
                 const QuadratureSpec& q = {}) {
  q.validate();
  require_total(gi, "integration");
  const auto& cdf = gi.cdf();
  const auto& sp = gi.space();
  double total = 0.0;
  for (const auto& a : cdf.spec().atoms()) total += a.mass * detail::call_integrand(sp, g, a.at);

  if constexpr (ContinuumSpace<S>) {
    const auto& pieces = cdf.pieces();
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      const auto& p = pieces[j];
      if (!p.is_density()) continue;
      std::vector<double> cuts{p.below, p.above};
      for (const auto& b : g.breaks) {
        if (!sp.contains(b) || sp.chunk_of(b) != p.span.chunk) continue;
        const double c = sp.coordinate(b);
        if (c > p.span.lo && c < p.span.hi) cuts.push_back(cdf.level_in_piece(j, c));
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      const double width = p.above - p.below;
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1];
        const auto n = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(static_cast<double>(q.subdivisions) * (b - a) / width)));
        const double h = (b - a) / static_cast<double>(n);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double t = a + (static_cast<double>(i) + 0.5) * h;
          s += detail::call_integrand(sp, g, gi.eval_G(t).point());
        }
        total += s * h;
      }
    }
  }
  return total;
}

}  // namespace ordercdf
