#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ordercdf/errors.hpp"
#include "ordercdf/order.hpp"
#include "ordercdf/spaces/text.hpp"

namespace ordercdf {

// Element of a finite chain, identified by its rank in the declared order.
struct FinitePoint {
  std::size_t rank = 0;

  friend auto operator<=>(const FinitePoint&, const FinitePoint&) = default;
};

// A finite chain of labels a_0 < a_1 < ... < a_{n-1}. Every point is
// isolated and the order is complete.
class FiniteSpace {
 public:
  using point_type = FinitePoint;
  static constexpr SpaceKind kind = SpaceKind::finite;
  static constexpr bool has_continuum = false;

  explicit FiniteSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw ConfigError("space.labels", "finite space needs at least one label");
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!text::valid_label(labels_[i])) {
        throw ConfigError("space.labels[" + std::to_string(i) + "]",
                          "invalid label '" + labels_[i] + "'");
      }
      if (!seen.insert(labels_[i]).second) {
        throw ConfigError("space.labels[" + std::to_string(i) + "]",
                          "duplicate label '" + labels_[i] + "'");
      }
    }
  }

  // Chain of n points labelled "0".."n-1" (or a, b, c, ... when n <= 26).
  static FiniteSpace chain(std::size_t n, bool letters = true) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(letters && n <= 26 ? std::string(1, static_cast<char>('a' + i))
                                          : std::to_string(i));
    }
    return FiniteSpace(std::move(labels));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  FinitePoint point(std::string_view label) const { return parse(label); }

  std::strong_ordering compare(FinitePoint x, FinitePoint y) const { return x.rank <=> y.rank; }
  bool contains(FinitePoint x) const { return x.rank < labels_.size(); }

  std::optional<FinitePoint> min() const { return FinitePoint{0}; }
  std::optional<FinitePoint> max() const { return FinitePoint{labels_.size() - 1}; }

  std::optional<FinitePoint> successor(FinitePoint x) const {
    if (x.rank + 1 < labels_.size()) return FinitePoint{x.rank + 1};
    return std::nullopt;
  }
  std::optional<FinitePoint> predecessor(FinitePoint x) const {
    if (x.rank > 0 && contains(x)) return FinitePoint{x.rank - 1};
    return std::nullopt;
  }
  std::optional<FinitePoint> step_up(FinitePoint x) const { return successor(x); }
  std::optional<FinitePoint> step_down(FinitePoint x) const { return predecessor(x); }

  bool is_complete() const { return true; }

  // A discrete space is its own dense subset.
  std::vector<FinitePoint> dense_points(std::size_t budget) const {
    std::vector<FinitePoint> out;
    for (std::size_t i = 0; i < std::min(budget, labels_.size()); ++i) out.push_back({i});
    return out;
  }

  FinitePoint point_at_fraction(double t) const {
    const auto n = labels_.size();
    const auto k = static_cast<std::size_t>(std::clamp(t, 0.0, 1.0) * static_cast<double>(n));
    return {std::min(k, n - 1)};
  }

  std::string format(FinitePoint x) const {
    if (!contains(x)) return "<rank " + std::to_string(x.rank) + ">";
    return labels_[x.rank];
  }

  FinitePoint parse(std::string_view s) const {
    const auto label = text::trim(s);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return {i};
    }
    throw DomainError("unknown label '" + std::string(label) + "'");
  }

  double numeric_value(FinitePoint x) const { return static_cast<double>(x.rank); }

  std::size_t grid_size(double /*resolution*/) const { return labels_.size(); }
  FinitePoint grid_point(double /*resolution*/, std::size_t k) const { return {k}; }

  bool operator==(const FiniteSpace&) const = default;

 private:
  std::vector<std::string> labels_;
};

// Integers lo..hi inclusive.
class IntegerRange {
 public:
  using point_type = long long;
  static constexpr SpaceKind kind = SpaceKind::int_range;
  static constexpr bool has_continuum = false;

  IntegerRange(long long lo, long long hi) : lo_(lo), hi_(hi) {
    if (lo > hi) throw ConfigError("space.hi", "int_range needs lo <= hi");
  }

  long long lo() const noexcept { return lo_; }
  long long hi() const noexcept { return hi_; }

  std::strong_ordering compare(long long x, long long y) const { return x <=> y; }
  bool contains(long long x) const { return lo_ <= x && x <= hi_; }

  std::optional<long long> min() const { return lo_; }
  std::optional<long long> max() const { return hi_; }
  std::optional<long long> successor(long long x) const {
    if (x >= lo_ && x < hi_) return x + 1;
    return std::nullopt;
  }
  std::optional<long long> predecessor(long long x) const {
    if (x > lo_ && x <= hi_) return x - 1;
    return std::nullopt;
  }
  std::optional<long long> step_up(long long x) const { return successor(x); }
  std::optional<long long> step_down(long long x) const { return predecessor(x); }

  bool is_complete() const { return true; }

  std::vector<long long> dense_points(std::size_t budget) const {
    std::vector<long long> out;
    for (long long v = lo_; v <= hi_ && out.size() < budget; ++v) {
      out.push_back(v);
      if (v == hi_) break;
    }
    return out;
  }

  long long point_at_fraction(double t) const {
    const long double width = static_cast<long double>(hi_) - lo_ + 1;
    const auto off = static_cast<long long>(std::floor(std::clamp(t, 0.0, 1.0) * width));
    return std::min(hi_, lo_ + off);
  }

  std::string format(long long x) const { return std::to_string(x); }
  long long parse(std::string_view s) const { return text::parse_integer(s); }
  double numeric_value(long long x) const { return static_cast<double>(x); }

  std::size_t grid_size(double /*resolution*/) const {
    return static_cast<std::size_t>(hi_ - lo_) + 1;
  }
  long long grid_point(double /*resolution*/, std::size_t k) const {
    return lo_ + static_cast<long long>(k);
  }

  bool operator==(const IntegerRange&) const = default;

 private:
  long long lo_;
  long long hi_;
};

static_assert(OrderedSpace<FiniteSpace>);
static_assert(OrderedSpace<IntegerRange>);

}  // namespace ordercdf
