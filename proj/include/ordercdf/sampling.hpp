#pragma once

// Inverse-transform sampling: x = G(u) for u uniform on ]0,1[.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "ordercdf/errors.hpp"
#include "ordercdf/probes.hpp"
#include "ordercdf/pseudo_inverse.hpp"

namespace ordercdf {

// Algorithm identifier written into sample metadata.
inline constexpr std::string_view kRngId = "mt19937_64";

// One uniform draw on ]0,1[: 53-bit draw on [0,1) with 0 moved to 2^-53.
inline double open_unit_draw(std::mt19937_64& rng) {
  const double u = unit_draw(rng);
  return u == 0.0 ? 0x1.0p-53 : u;
}

template <OrderedSpace S>
void require_total(const PseudoInverse<S>& gi, std::string_view what) {
  if (!gi.is_total()) {
    throw UnsupportedSpace(std::string(what) + " needs G defined on all of [0,1]; here A = " +
                           gi.domain().describe() + " (the space is not complete)");
  }
}

template <OrderedSpace S>
class Sampler {
 public:
  using point_type = typename S::point_type;

  Sampler(PseudoInverse<S> gi, std::uint64_t seed) : gi_(std::move(gi)), seed_(seed), rng_(seed) {
    require_total(gi_, "sampling");
  }

  point_type draw() {
    ++emitted_;
    return gi_.eval_G(open_unit_draw(rng_)).point();
  }

  std::vector<point_type> sample(std::size_t n) {
    std::vector<point_type> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(draw());
    return out;
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t emitted() const noexcept { return emitted_; }
  const PseudoInverse<S>& pseudo_inverse() const noexcept { return gi_; }

 private:
  PseudoInverse<S> gi_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::size_t emitted_ = 0;
};

struct PushforwardResult {
  double measure = 0.0;           // μ(u)
  double preimage_length = 0.0;   // Lebesgue length of G⁻¹(u)
  std::vector<LevelInterval> preimage;

  bool agrees(double tol = 1e-9) const { return std::abs(measure - preimage_length) <= tol; }
};

template <OrderedSpace S>
PushforwardResult pushforward_check(const PseudoInverse<S>& gi, const UnionOf<S>& u) {
  require_total(gi, "the pushforward identity");
  PushforwardResult r;
  r.measure = gi.cdf().spec().measure_of(u);
  r.preimage = gi.preimage(u);
  r.preimage_length = lebesgue_length(r.preimage);
  return r;
}

}  // namespace ordercdf
