#pragma once

#include <complex>

#include "csdecay/ermakov.hpp"
#include "csdecay/survival_params.hpp"

namespace csdecay {

// Closed-form decay quantities at one (params, state) point. survival may
// underflow for large beta at late times; log_survival stays finite and
// underflowed is set when the linear value was clamped to zero.
struct DecayQuantities {
  double survival = 1.0;
  double log_survival = 0.0;
  std::complex<double> amplitude{1.0, 0.0};
  double alpha = 1.0;
  double asymptote = 1.0;
  double crossover_time = 0.0;
  bool underflowed = false;
};

// N[1 + lambda(N-1)].
double exponent_beta(const SystemParams& params);

// alpha(t) = (1/2) sqrt[(1 + 1/b^2)^2 + (b'/b)^2]; equals 1 at t = 0 and is
// bounded below by 1/2.
double alpha_factor(const ScalingState& state);

// ln(alpha b) = ln[ sqrt((b + 1/b)^2 + b'^2) / 2 ]; the survival probability
// is exp(-beta * this).
double log_alpha_b(const ScalingState& state);

// S = (alpha b)^(-beta). Underflows to 0 for large beta at late times; use
// log_survival (via evaluate or log_alpha_b) for slope fits.
double survival_probability(const SystemParams& params, const ScalingState& state);

// Complex overlap with |A|^2 = S. Computed as
//   A = exp( -(beta/2) [ ln(alpha b) + i (tau - phi) ] ),
// phi = atan(b' / (b + 1/b)), so the phase is tracked continuously (no
// principal-branch reduction; b + 1/b >= 2 keeps phi well defined).
// gauge_away_phase multiplies by exp(+i beta tau / 2), removing the
// dynamical phase E0 tau.
std::complex<double> survival_amplitude(const SystemParams& params,
                                        const ScalingState& state,
                                        bool gauge_away_phase = false);

// 1 - (beta/8) t^2, the quadratic short-time law.
double short_time_series(const SystemParams& params, double t);

// Energy spread of the initial state, sqrt(beta)/(2 sqrt(2)); its square is
// the t^2 coefficient above.
double energy_variance(const SystemParams& params);

// (2/t)^beta for t > 0.
double long_time_asymptote(const SystemParams& params, double t);

// Onset scale sqrt(2 beta) of the power-law regime (a "much greater than"
// threshold, not a sharp boundary).
double crossover_time(const SystemParams& params);

DecayQuantities evaluate(const SystemParams& params, const ScalingState& state);

}  // namespace csdecay
