#include "csdecay/observables.hpp"

#include <cmath>

#include "csdecay/ensembles.hpp"
#include "csdecay/oracle.hpp"

namespace csdecay {

double nonescape_probability(const SystemParams& params, const ScalingState& state,
                             const RegionSpec& region) {
  if (!(state.b > 0.0)) throw std::domain_error("nonescape_probability: b must be > 0");
  const OracleEstimate integral = nonescape_quadrature(params, state.b, region.a);
  return std::exp(-mehta_constant(params) - params.beta() * std::log(state.b)) *
         integral.value;
}

double nonescape_asymptote(const SystemParams& params, const ScalingState& state,
                           const RegionSpec& region) {
  if (!(state.b > 0.0)) throw std::domain_error("nonescape_asymptote: b must be > 0");
  const double beta = params.beta();
  return std::exp(-mehta_constant(params) - beta * std::log(state.b) +
                  beta * std::log(region.a) +
                  log_selberg(params.n, 1.0, 1.0, params.lambda));
}

double density_profile(double q, const ScalingState& state, int n_particles) {
  if (!(state.b > 0.0)) throw std::domain_error("density_profile: b must be > 0");
  const double u = q / state.b;
  if (std::abs(u) >= 1.0) return 0.0;
  return (2.0 * n_particles / M_PI) * std::sqrt(1.0 - u * u) / state.b;
}

double integrated_density(const ScalingState& state, const RegionSpec& region,
                          int n_particles) {
  if (!(state.b > 0.0)) throw std::domain_error("integrated_density: b must be > 0");
  // int_{-x}^{x} sqrt(1-u^2) du = x sqrt(1-x^2) + asin x, x = min(a/2b, 1).
  const double x = std::min(region.a / (2.0 * state.b), 1.0);
  return (2.0 * n_particles / M_PI) * (x * std::sqrt(1.0 - x * x) + std::asin(x));
}

double integrated_density_asymptote(const ScalingState& state, const RegionSpec& region,
                                    int n_particles) {
  if (!(state.t > 0.0))
    throw std::domain_error("integrated_density_asymptote: t must be > 0");
  return 2.0 * region.a * n_particles / (M_PI * state.t);
}

}  // namespace csdecay
