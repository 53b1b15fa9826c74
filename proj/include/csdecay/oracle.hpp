#pragma once

#include <cstdint>
#include <stdexcept>

#include "csdecay/ermakov.hpp"
#include "csdecay/survival_params.hpp"

namespace csdecay {

// Requested operation exceeds what the deterministic rules support
// (e.g. quadrature beyond N = 4); the message points at the alternative.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OracleMethod {
  GaussHermite,        // plain tensor rule, weight matched to Re(exponent)
  OrderedSectorGauss,  // N! x ordered sector, Jastrow kinks absorbed into
                       // Gauss-Jacobi weights (used when 2*lambda is not even)
  GaussLegendre,       // tensor rule on the box region
  MonteCarlo,
};

struct OracleEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for deterministic quadrature
  OracleMethod method = OracleMethod::GaussHermite;
  std::int64_t evaluations = 0;
  std::uint64_t seed = 0;          // Monte Carlo only
  bool accuracy_warning = false;   // node budget below guidance for this integrand
};

// Brute-force survival probability: the N-dimensional complex Gaussian-
// Jastrow integral squared, times the closed-form normalization prefactor.
// N <= 4. nodes = 0 picks the per-method default (80 plain / 64 sector).
OracleEstimate survival_quadrature(const SystemParams& params, const ScalingState& state,
                                   int nodes = 0);

// Importance-sampled estimate of the same integral: q ~ product Gaussian
// matched to Re(exponent), complex weight = Jastrow x phase, jackknife
// std_error over 32 batches. Bit-reproducible for a fixed seed, independent
// of worker count. samples >= 10^4.
OracleEstimate survival_monte_carlo(const SystemParams& params, const ScalingState& state,
                                    std::int64_t samples, std::uint64_t seed);

// I_{N,l} = int_{[-a/2,a/2]^N} prod e^{-q^2/b^2} prod |q_i-q_j|^{2l}. N <= 4.
OracleEstimate nonescape_quadrature(const SystemParams& params, double b, double a,
                                    int nodes = 0);

// Numerical Mehta integral int prod e^{-q_i^2} prod |q_i-q_j|^{2l}, to be
// compared against exp(mehta_constant). N <= 3.
OracleEstimate mehta_constant_numeric(const SystemParams& params, int nodes = 0);

// Direct quadrature of the Selberg integrand on [0,1]^n for alpha = beta = 1,
// n <= 3 (test oracle for the gamma-product formula).
OracleEstimate selberg_unit_quadrature(int n, double g, int nodes = 0);

}  // namespace csdecay
