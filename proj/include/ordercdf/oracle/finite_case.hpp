#pragma once

// Exhaustive ground truth on small finite orders: every subset of X with its
// measure, summed straight from the atom list.

#include <cstdint>
#include <optional>
#include <vector>

#include "ordercdf/errors.hpp"
#include "ordercdf/interval_union.hpp"
#include "ordercdf/measure.hpp"

namespace ordercdf::oracle {

inline constexpr std::size_t kMaxFiniteCase = 8;

template <OrderedSpace S>
  requires(!S::has_continuum)
class FiniteCase {
 public:
  using point_type = typename S::point_type;

  explicit FiniteCase(MeasureSpec<S> spec) : spec_(std::move(spec)) {
    const auto& sp = spec_.space();
    const auto n = sp.grid_size(1.0);
    if (n > kMaxFiniteCase) {
      throw DomainError("finite oracle is capped at " + std::to_string(kMaxFiniteCase) +
                        " points, got " + std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) points_.push_back(sp.grid_point(1.0, k));
    for (const auto& p : points_) masses_.push_back(spec_.atom_mass(p));
  }

  const MeasureSpec<S>& spec() const noexcept { return spec_; }
  const S& space() const noexcept { return spec_.space(); }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<point_type>& points() const noexcept { return points_; }
  double mass(std::size_t k) const { return masses_.at(k); }

  // Subset given by a bitmask over points() (bit k ↔ k-th smallest point).
  UnionOf<S> subset(std::uint32_t mask) const {
    std::vector<point_type> pts;
    for (std::size_t k = 0; k < size(); ++k) {
      if (mask & (1u << k)) pts.push_back(points_[k]);
    }
    return points_union(space(), pts);
  }

  std::uint32_t mask_of(const UnionOf<S>& u) const {
    std::uint32_t m = 0;
    for (std::size_t k = 0; k < size(); ++k) {
      if (membership(space(), points_[k], u)) m |= 1u << k;
    }
    return m;
  }

  double sum(std::uint32_t mask) const {
    double s = 0.0;
    for (std::size_t k = 0; k < size(); ++k) {
      if (mask & (1u << k)) s += masses_[k];
    }
    return s;
  }

  // μ(≤ x) and μ(< x) by summation.
  double F(std::size_t k) const { return sum((2u << k) - 1); }
  double F_minus(std::size_t k) const { return sum((1u << k) - 1); }

  // min {y : F(y) >= r} by scanning; nullopt when no point qualifies.
  std::optional<point_type> superlevel_min(double r) const {
    for (std::size_t k = 0; k < size(); ++k) {
      if (F(k) >= r) return points_[k];
    }
    return std::nullopt;
  }

 private:
  MeasureSpec<S> spec_;
  std::vector<point_type> points_;
  std::vector<double> masses_;
};

struct SubsetRow {
  std::uint32_t mask = 0;
  double measure = 0.0;
};

// All 2^|X| subsets with their measures, indexed by mask.
template <OrderedSpace S>
std::vector<SubsetRow> enumerate_subset_measures(const FiniteCase<S>& c) {
  const auto n = c.size();
  std::vector<SubsetRow> table(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < table.size(); ++m) {
    table[m].mask = m;
    table[m].measure = c.sum(m);
  }
  return table;
}

}  // namespace ordercdf::oracle
