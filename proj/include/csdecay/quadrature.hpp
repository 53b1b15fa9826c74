#pragma once

#include <vector>

namespace csdecay {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss rules from the Golub-Welsch eigenvalue construction. Results are
// cached per (rule, n, a, b); all routines are thread safe.

// Weight e^{-x^2} on (-inf, inf).
const QuadratureRule& gauss_hermite(int n);

// Weight 1 on [-1, 1].
const QuadratureRule& gauss_legendre(int n);

// Weight (1-x)^a (1+x)^b on [-1, 1]; requires a, b > -1.
const QuadratureRule& gauss_jacobi(int n, double a, double b);

}  // namespace csdecay
