#pragma once

// Named example measures. Masses are dyadic so cumulative sums are exact in
// binary floating point.

#include <cmath>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ordercdf/errors.hpp"
#include "ordercdf/measure.hpp"
#include "ordercdf/spaces/finite_space.hpp"
#include "ordercdf/spaces/lex_product.hpp"
#include "ordercdf/spaces/real_interval.hpp"

namespace ordercdf {

using AnySpec = std::variant<MeasureSpec<FiniteSpace>, MeasureSpec<IntegerRange>,
                             MeasureSpec<RealInterval>, MeasureSpec<LexProduct>>;

namespace instances {

// a < b < c with masses 0.2, 0.3, 0.5.
inline MeasureSpec<FiniteSpace> three_atom() {
  const FiniteSpace s({"a", "b", "c"});
  return {s, {{s.point("a"), 0.2}, {s.point("b"), 0.3}, {s.point("c"), 0.5}}, {}};
}

inline MeasureSpec<RealInterval> uniform() {
  return {RealInterval::unit(), {}, {{Interval<double>::closed(0.0, 1.0), 1.0}}};
}

// Half an atom at 0.5, half spread uniformly over [0,1].
inline MeasureSpec<RealInterval> mixed() {
  return {RealInterval::unit(), {{0.5, 0.5}}, {{Interval<double>::closed(0.0, 1.0), 0.5}}};
}

// Uniform on [0,0.4] ∪ [0.6,1] with half the mass on each part.
inline MeasureSpec<RealInterval> gapped() {
  return {RealInterval::unit(),
          {},
          {{Interval<double>::closed(0.0, 0.4), 0.5}, {Interval<double>::closed(0.6, 1.0), 0.5}}};
}

// {0,1} × [0,1] ordered lexicographically: fiber 0 uniform with mass 1/2, an
// atom of 1/4 at (1,0) (the point right after (0,1)), fiber 1 uniform with 1/4.
inline MeasureSpec<LexProduct> lex() {
  const auto s = LexProduct::uniform_fibers(FiniteSpace({"0", "1"}), 0.0, 1.0);
  return {s,
          {{LexPoint{1, 0.0}, 0.25}},
          {{Interval<LexPoint>::closed({0, 0.0}, {0, 1.0}), 0.5},
           {Interval<LexPoint>::closed({1, 0.0}, {1, 1.0}), 0.25}}};
}

// Uniform on the open interval ]0,1[: not complete, G(0) and G(1) undefined.
inline MeasureSpec<RealInterval> open_uniform() {
  return {RealInterval(0.0, 1.0, false, false), {}, {{Interval<double>::everything(), 1.0}}};
}

// Binomial(10, 1/2) on the integers 0..10.
inline MeasureSpec<IntegerRange> binomial() {
  std::vector<Atom<long long>> atoms;
  double c = 1.0;
  for (long long k = 0; k <= 10; ++k) {
    atoms.push_back({k, std::ldexp(c, -10)});
    c = c * static_cast<double>(10 - k) / static_cast<double>(k + 1);
  }
  return {IntegerRange(0, 10), atoms, {}};
}

}  // namespace instances

struct NamedInstance {
  std::string name;
  std::string description;
  AnySpec spec;
  bool complete = true;
};

inline std::vector<NamedInstance> shipped_instances() {
  return {
      {"three_atom", "atoms 0.2, 0.3, 0.5 on a < b < c", instances::three_atom()},
      {"uniform", "uniform on [0,1]", instances::uniform()},
      {"mixed", "atom 0.5 at 0.5 plus uniform mass 0.5 on [0,1]", instances::mixed()},
      {"gapped", "uniform on [0,0.4] and [0.6,1], mass 0.5 each", instances::gapped()},
      {"lex", "{0,1} x [0,1] lexicographic, atom 0.25 at (1,0)", instances::lex()},
      {"open_uniform", "uniform on ]0,1[ (incomplete space)", instances::open_uniform(), false},
      {"binomial", "Binomial(10, 1/2) on 0..10", instances::binomial()},
  };
}

inline NamedInstance find_instance(std::string_view name) {
  for (auto& i : shipped_instances()) {
    if (i.name == name) return i;
  }
  std::string known;
  for (const auto& i : shipped_instances()) known += (known.empty() ? "" : ", ") + i.name;
  throw ConfigError("case", "unknown instance '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace ordercdf
