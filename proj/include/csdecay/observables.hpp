#pragma once

#include "csdecay/ermakov.hpp"
#include "csdecay/survival_params.hpp"

namespace csdecay {

// Observation window [-a/2, a/2].
struct RegionSpec {
  double a = 1.0;

  explicit RegionSpec(double width) : a(width) {
    if (!(a > 0.0)) throw std::domain_error("RegionSpec: width must be > 0");
  }
};

// Probability that all N particles sit inside the region:
//   P = C^{-1} b^{-beta} I_{N,l}(b)  with  I over the box with weight
// e^{-q^2/b^2}. The b^{-beta} prefactor is the scaling-exact one; it matches
// the t^{-beta} form asymptotically since b ~ t. N <= 4 (quadrature-backed).
double nonescape_probability(const SystemParams& params, const ScalingState& state,
                             const RegionSpec& region);

// Selberg saturation value C^{-1} b^{-beta} a^{beta} S_N(1,1,l); accurate
// once b >> sqrt(l) a.
double nonescape_asymptote(const SystemParams& params, const ScalingState& state,
                           const RegionSpec& region);

// Scaled semicircle profile (2N/pi) sqrt(1-(q/b)^2)/b, zero outside |q| <= b.
// Large-N approximation, used for every N here.
double density_profile(double q, const ScalingState& state, int n_particles);

// Closed-form integral of the profile over the region (circular-segment
// arcsine form); equals N once the region covers the whole support.
double integrated_density(const ScalingState& state, const RegionSpec& region,
                          int n_particles);

// 2 a N / (pi t), the late-time tail of the integrated density.
double integrated_density_asymptote(const ScalingState& state, const RegionSpec& region,
                                    int n_particles);

}  // namespace csdecay
