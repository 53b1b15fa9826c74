#include "csdecay/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "csdecay/ensembles.hpp"

namespace csdecay {

namespace {

// Implicit-QL diagonalization of the symmetric tridiagonal Jacobi matrix,
// accumulating only the first row of the eigenvector matrix (EISPACK imtql2
// reduced to what Golub-Welsch needs). diag/off are destroyed.
void golub_welsch(std::vector<double>& diag, std::vector<double>& off,
                  std::vector<double>& first_row) {
  const int n = static_cast<int>(diag.size());
  first_row.assign(n, 0.0);
  if (n == 0) return;
  first_row[0] = 1.0;
  off.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    for (int iter = 0;; ++iter) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (iter >= 60) throw std::runtime_error("golub_welsch: QL failed to converge");
      double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * off[i];
        const double b = c * off[i];
        r = std::hypot(f, g);
        off[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          off[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        f = first_row[i + 1];
        first_row[i + 1] = s * first_row[i] + c * f;
        first_row[i] = c * first_row[i] - s * f;
      }
      if (underflow) continue;
      diag[l] -= p;
      off[l] = g;
      off[m] = 0.0;
    }
  }
}

QuadratureRule build_rule(std::vector<double> diag, std::vector<double> off, double mu0) {
  std::vector<double> z;
  golub_welsch(diag, off, z);
  const int n = static_cast<int>(diag.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] < diag[b]; });
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = diag[order[i]];
    rule.weights[i] = mu0 * z[order[i]] * z[order[i]];
  }
  return rule;
}

struct RuleKey {
  int kind;  // 0 hermite, 1 legendre, 2 jacobi
  int n;
  double a, b;
  bool operator<(const RuleKey& o) const {
    return std::tie(kind, n, a, b) < std::tie(o.kind, o.n, o.a, o.b);
  }
};

const QuadratureRule& cached(const RuleKey& key) {
  static std::map<RuleKey, QuadratureRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const int n = key.n;
  if (n < 1) throw std::domain_error("quadrature rule needs n >= 1");
  std::vector<double> diag(n, 0.0), off(n - 1, 0.0);
  double mu0 = 0.0;
  switch (key.kind) {
    case 0:
      for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k / 2.0);
      mu0 = std::sqrt(M_PI);
      break;
    case 1:
      for (int k = 1; k < n; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
      mu0 = 2.0;
      break;
    case 2: {
      const double a = key.a, b = key.b;
      const double apb = a + b;
      diag[0] = (b - a) / (apb + 2.0);
      for (int k = 1; k < n; ++k) {
        const double den = (2.0 * k + apb) * (2.0 * k + apb + 2.0);
        diag[k] = (b * b - a * a) / den;
        const double num =
            4.0 * k * (k + a) * (k + b) * (k + apb) /
            ((2.0 * k + apb) * (2.0 * k + apb) * (2.0 * k + apb + 1.0) *
             (2.0 * k + apb - 1.0));
        off[k - 1] = std::sqrt(num);
      }
      mu0 = std::exp((apb + 1.0) * std::log(2.0) + log_gamma(a + 1.0) +
                     log_gamma(b + 1.0) - log_gamma(apb + 2.0));
      break;
    }
    default:
      throw std::logic_error("unknown rule kind");
  }
  return cache.emplace(key, build_rule(std::move(diag), std::move(off), mu0))
      .first->second;
}

}  // namespace

const QuadratureRule& gauss_hermite(int n) { return cached({0, n, 0.0, 0.0}); }

const QuadratureRule& gauss_legendre(int n) { return cached({1, n, 0.0, 0.0}); }

const QuadratureRule& gauss_jacobi(int n, double a, double b) {
  if (!(a > -1.0) || !(b > -1.0))
    throw std::domain_error("gauss_jacobi: parameters must exceed -1");
  return cached({2, n, a, b});
}

}  // namespace csdecay
