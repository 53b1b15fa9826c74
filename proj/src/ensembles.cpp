#include "csdecay/ensembles.hpp"

#include <cmath>

namespace csdecay {

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be > 0");
  // Godfrey's 15-term coefficients for g = 607/128.
  static constexpr double kG = 607.0 / 128.0;
  static constexpr double kCoef[15] = {
      0.99999999999999709182,     57.156235665862923517,
      -59.597960355475491248,     14.136097974741747174,
      -0.49191381609762019978,    0.33994649984811888699e-4,
      0.46523628927048575665e-4,  -0.98374475304879564677e-4,
      0.15808870322491248884e-3,  -0.21026444172410488319e-3,
      0.21743961811521264320e-3,  -0.16431810653676389022e-3,
      0.84418223983852743293e-4,  -0.26190838401581408670e-4,
      0.36899182659531622704e-5};
  double series = kCoef[0];
  for (int k = 1; k < 15; ++k) series += kCoef[k] / (x - 1.0 + k);
  const double t = x + kG - 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t + std::log(series);
}

double mehta_constant(const SystemParams& params) {
  const int n = params.n;
  const double l = params.lambda;
  double log_c = -(params.beta() / 2.0) * std::log(2.0) +
                 (n / 2.0) * std::log(2.0 * M_PI);
  for (int j = 0; j < n; ++j)
    log_c += log_gamma(1.0 + (j + 1) * l) - log_gamma(1.0 + l);
  return log_c;
}

EnsembleConstants ensemble_constants(const SystemParams& params) {
  return {params, mehta_constant(params)};
}

double log_selberg(int n, double a, double b, double g) {
  if (n < 1) throw std::domain_error("log_selberg: n must be >= 1");
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("log_selberg: a, b must be > 0");
  if (!(g >= 0.0)) throw std::domain_error("log_selberg: g must be >= 0");
  double log_s = 0.0;
  for (int j = 0; j < n; ++j) {
    log_s += log_gamma(a + j * g) + log_gamma(b + j * g) + log_gamma(1.0 + (j + 1) * g);
    log_s -= log_gamma(a + b + (n + j - 1) * g) + log_gamma(1.0 + g);
  }
  return log_s;
}

}  // namespace csdecay
