#pragma once

#include <stdexcept>

namespace csdecay {

// Particle number and coupling of the inverse-square gas. lambda is also the
// exclusion-statistics parameter g; lambda in (0,1) means lambda(lambda-1) < 0
// (attractive), which is still inside the domain of every formula here.
struct SystemParams {
  int n = 1;
  double lambda = 0.0;

  SystemParams(int n, double lambda) : n(n), lambda(lambda) {
    if (n < 1) throw std::domain_error("SystemParams: n must be >= 1");
    if (!(lambda >= 0.0)) throw std::domain_error("SystemParams: lambda must be >= 0");
  }

  // Decay exponent N[1 + lambda(N-1)].
  double beta() const { return n * (1.0 + lambda * (n - 1)); }
};

}  // namespace csdecay
