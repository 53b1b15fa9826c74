#pragma once

#include "csdecay/survival_params.hpp"

namespace csdecay {

// Gaussian beta-ensemble normalization, kept in log space: C_{N,l} overflows
// doubles near N ~ 30 at l ~ 2.
struct EnsembleConstants {
  SystemParams params;
  double log_c = 0.0;
};

// ln Gamma(x) for x > 0, 15-term Lanczos (g = 607/128). Relative error of
// the result is a few 1e-15 over the tested range.
double log_gamma(double x);

// ln C_{N,l} with
//   C = 2^{-b/2} (2 pi)^{N/2} prod_{j=0}^{N-1} Gamma(1+(j+1)l)/Gamma(1+l),
// b = N[1 + l(N-1)].
double mehta_constant(const SystemParams& params);

EnsembleConstants ensemble_constants(const SystemParams& params);

// ln S_n(a, b, g) via the Selberg gamma product. Requires a, b > 0, g >= 0.
double log_selberg(int n, double a, double b, double g);

}  // namespace csdecay
