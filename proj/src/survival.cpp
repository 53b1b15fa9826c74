#include "csdecay/survival.hpp"

#include <cfloat>
#include <cmath>

namespace csdecay {

namespace {

void check_state(const ScalingState& state) {
  if (!(state.b > 0.0)) throw std::domain_error("scaling state requires b > 0");
}

}  // namespace

double exponent_beta(const SystemParams& params) { return params.beta(); }

double alpha_factor(const ScalingState& state) {
  check_state(state);
  const double inv_b2 = 1.0 / (state.b * state.b);
  const double ratio = state.b_dot / state.b;
  return 0.5 * std::sqrt((1.0 + inv_b2) * (1.0 + inv_b2) + ratio * ratio);
}

double log_alpha_b(const ScalingState& state) {
  check_state(state);
  const double s = state.b + 1.0 / state.b;
  return std::log(0.5 * std::hypot(s, state.b_dot));
}

double survival_probability(const SystemParams& params, const ScalingState& state) {
  return std::exp(-params.beta() * log_alpha_b(state));
}

std::complex<double> survival_amplitude(const SystemParams& params,
                                        const ScalingState& state,
                                        bool gauge_away_phase) {
  check_state(state);
  if (!std::isfinite(state.tau)) throw std::domain_error("survival_amplitude: tau must be finite");
  const double half_beta = 0.5 * params.beta();
  const double phi = std::atan(state.b_dot / (state.b + 1.0 / state.b));
  const double log_mod = -half_beta * log_alpha_b(state);
  double phase = half_beta * (phi - state.tau);
  if (gauge_away_phase) phase += half_beta * state.tau;
  return std::polar(std::exp(log_mod), phase);
}

double short_time_series(const SystemParams& params, double t) {
  if (t < 0.0) throw std::domain_error("short_time_series: t must be >= 0");
  return 1.0 - params.beta() / 8.0 * t * t;
}

double energy_variance(const SystemParams& params) {
  return std::sqrt(params.beta()) / (2.0 * std::sqrt(2.0));
}

double long_time_asymptote(const SystemParams& params, double t) {
  if (!(t > 0.0)) throw std::domain_error("long_time_asymptote: t must be > 0");
  return std::exp(params.beta() * std::log(2.0 / t));
}

double crossover_time(const SystemParams& params) {
  return std::sqrt(2.0 * params.beta());
}

DecayQuantities evaluate(const SystemParams& params, const ScalingState& state) {
  DecayQuantities q;
  q.alpha = alpha_factor(state);
  q.log_survival = -params.beta() * log_alpha_b(state);
  q.survival = std::exp(q.log_survival);
  if (q.survival == 0.0 && q.log_survival < 0.0) {
    q.underflowed = true;
  }
  q.amplitude = survival_amplitude(params, state);
  q.asymptote = state.t > 0.0 ? long_time_asymptote(params, state.t) : 1.0;
  q.crossover_time = crossover_time(params);
  return q;
}

}  // namespace csdecay
