#include "csdecay/oracle.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "csdecay/ensembles.hpp"
#include "csdecay/parallel.hpp"
#include "csdecay/quadrature.hpp"
#include "csdecay/rng.hpp"
#include "csdecay/summation.hpp"

namespace csdecay {

namespace {

using cd = std::complex<double>;

bool integer_coupling(double lambda) { return std::floor(lambda) == lambda; }

int resolve_nodes(int requested, int fallback) {
  if (requested == 0) return fallback;
  if (requested < 20) throw std::domain_error("quadrature needs nodes >= 20");
  return requested;
}

std::vector<double> jastrow_table(const std::vector<double>& q, double two_lambda) {
  const std::size_t n = q.size();
  std::vector<double> t(n * n, 1.0);
  if (two_lambda == 0.0) return t;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t[i * n + j] = std::pow(std::abs(q[i] - q[j]), two_lambda);
  return t;
}

// I(sigma) = int_{R^N} prod dq_i e^{-sigma q_i^2 / 2} prod_{j>i} |q_i-q_j|^{2l}
// by a tensor Gauss-Hermite rule matched to Re(sigma); the leftover factor
// exp(i Im(-sigma)/2 q^2) rides along as part of the integrand.
cd plain_hermite_integral(int n_particles, double lambda, cd sigma, int nodes,
                          std::int64_t& evals) {
  const auto& rule = gauss_hermite(nodes);
  const double sr = sigma.real();
  const double scale = std::sqrt(2.0 / sr);
  const double ph = -0.5 * sigma.imag();
  std::vector<double> q(nodes);
  std::vector<cd> wph(nodes);
  for (int k = 0; k < nodes; ++k) {
    q[k] = rule.nodes[k] * scale;
    wph[k] = rule.weights[k] * scale * std::polar(1.0, ph * q[k] * q[k]);
  }
  evals = 1;
  for (int d = 0; d < n_particles; ++d) evals *= nodes;

  if (n_particles == 1) {
    KahanComplexSum<double> acc;
    for (int k = 0; k < nodes; ++k) acc += wph[k];
    return acc.value();
  }

  const std::vector<double> j2 = jastrow_table(q, 2.0 * lambda);
  const auto pair = [&](int i, int j) { return j2[i * nodes + j]; };
  std::vector<cd> partial(nodes);

  if (n_particles == 2) {
    parallel_for_index(nodes, [&](std::size_t i) {
      KahanComplexSum<double> acc;
      for (int j = 0; j < nodes; ++j) acc += wph[j] * pair(i, j);
      partial[i] = wph[i] * acc.value();
    });
  } else if (n_particles == 3) {
    parallel_for_index(nodes, [&](std::size_t i) {
      KahanComplexSum<double> acc;
      for (int j = 0; j < nodes; ++j) {
        const cd wj = wph[j] * pair(i, j);
        KahanComplexSum<double> inner;
        for (int k = 0; k < nodes; ++k) inner += wph[k] * (pair(i, k) * pair(j, k));
        acc += wj * inner.value();
      }
      partial[i] = wph[i] * acc.value();
    });
  } else {
    parallel_for_index(nodes, [&](std::size_t i) {
      KahanComplexSum<double> acc;
      for (int j = 0; j < nodes; ++j) {
        const double pij = pair(i, j);
        KahanComplexSum<double> accj;
        for (int k = 0; k < nodes; ++k) {
          const double pik_pjk = pair(i, k) * pair(j, k);
          KahanComplexSum<double> inner;
          for (int l = 0; l < nodes; ++l)
            inner += wph[l] * (pair(i, l) * pair(j, l) * pair(k, l));
          accj += wph[k] * pik_pjk * inner.value();
        }
        acc += wph[j] * pij * accj.value();
      }
      partial[i] = wph[i] * acc.value();
    });
  }
  KahanComplexSum<double> total;
  for (const cd& p : partial) total += p;
  return total.value();
}

// Same integral over the ordered sector q_1 < ... < q_N times N!, with the
// gap substitution that turns every |q_i - q_j|^{2l} kink into an exact
// Gauss-Jacobi weight. N = 2: (x, r) -> (x, x+r); N = 3: (x, r, c) ->
// (x, x+rc, x+r) with Jacobian r. Exponentially convergent for every
// lambda >= 0.
cd sector_hermite_integral(int n_particles, double lambda, cd sigma, int nodes,
                           std::int64_t& evals) {
  const double sr = sigma.real();
  const double ax = n_particles * sr / 2.0;
  const double sx = 1.0 / std::sqrt(ax);
  const double big_r = 14.0 / std::sqrt(sr / 2.0);
  const auto& hx = gauss_hermite(nodes);
  const cd half_sigma = 0.5 * sigma;

  if (n_particles == 2) {
    const auto& jr = gauss_jacobi(nodes, 0.0, 2.0 * lambda);
    evals = static_cast<std::int64_t>(nodes) * nodes;
    std::vector<cd> partial(nodes);
    parallel_for_index(nodes, [&](std::size_t i) {
      const double x = hx.nodes[i] * sx;
      KahanComplexSum<double> acc;
      for (int j = 0; j < nodes; ++j) {
        const double r = big_r * (1.0 + jr.nodes[j]) / 2.0;
        const double q2 = x + r;
        acc += jr.weights[j] *
               std::exp(cd(ax * x * x, 0.0) - half_sigma * (x * x + q2 * q2));
      }
      partial[i] = hx.weights[i] * acc.value();
    });
    KahanComplexSum<double> total;
    for (const cd& p : partial) total += p;
    return 2.0 * sx * std::pow(big_r / 2.0, 2.0 * lambda + 1.0) * total.value();
  }

  // N == 3
  const auto& jr = gauss_jacobi(nodes, 0.0, 6.0 * lambda + 1.0);
  const auto& jc = gauss_jacobi(nodes, 2.0 * lambda, 2.0 * lambda);
  evals = static_cast<std::int64_t>(nodes) * nodes * nodes;
  std::vector<cd> partial(nodes);
  parallel_for_index(nodes, [&](std::size_t i) {
    const double x = hx.nodes[i] * sx;
    KahanComplexSum<double> acc;
    for (int j = 0; j < nodes; ++j) {
      const double r = big_r * (1.0 + jr.nodes[j]) / 2.0;
      KahanComplexSum<double> inner;
      for (int k = 0; k < nodes; ++k) {
        const double c = (1.0 + jc.nodes[k]) / 2.0;
        const double q2 = x + r * c;
        const double q3 = x + r;
        inner += jc.weights[k] * std::exp(cd(ax * x * x, 0.0) -
                                          half_sigma * (x * x + q2 * q2 + q3 * q3));
      }
      acc += jr.weights[j] * inner.value();
    }
    partial[i] = hx.weights[i] * acc.value();
  });
  KahanComplexSum<double> total;
  for (const cd& p : partial) total += p;
  return 6.0 * sx * std::pow(big_r / 2.0, 6.0 * lambda + 2.0) *
         std::pow(0.5, 4.0 * lambda + 1.0) * total.value();
}

cd gaussian_jastrow_integral(int n_particles, double lambda, cd sigma, int nodes,
                             OracleMethod& method, bool& warning, std::int64_t& evals) {
  const bool plain = n_particles == 1 || integer_coupling(lambda) || n_particles == 4;
  if (plain) {
    method = OracleMethod::GaussHermite;
    if (n_particles >= 2 && !integer_coupling(lambda)) warning = true;
    return plain_hermite_integral(n_particles, lambda, sigma, nodes, evals);
  }
  method = OracleMethod::OrderedSectorGauss;
  return sector_hermite_integral(n_particles, lambda, sigma, nodes, evals);
}

void check_state_domain(const ScalingState& state) {
  if (!(state.b > 0.0)) throw std::domain_error("oracle: state requires b > 0");
}

}  // namespace

OracleEstimate survival_quadrature(const SystemParams& params, const ScalingState& state,
                                   int nodes) {
  if (params.n > 4)
    throw CapabilityError("survival_quadrature supports N <= 4; use survival_monte_carlo");
  check_state_domain(state);
  if (state.t > 5.0)
    throw CapabilityError(
        "survival_quadrature is restricted to t <= 5 (oscillatory phase); "
        "beyond that certify via the verified regime");
  const int n = resolve_nodes(nodes, integer_coupling(params.lambda) ? 80 : 64);

  const double b = state.b;
  const cd sigma(1.0 + 1.0 / (b * b), -state.b_dot / b);
  OracleEstimate est;
  est.std_error = 0.0;
  if (n < 40) est.accuracy_warning = true;
  const cd integral = gaussian_jastrow_integral(params.n, params.lambda, sigma, n,
                                                est.method, est.accuracy_warning,
                                                est.evaluations);
  const double log_c = mehta_constant(params);
  est.value = std::exp(-2.0 * log_c - params.beta() * std::log(b) +
                       2.0 * std::log(std::abs(integral)));
  return est;
}

OracleEstimate survival_monte_carlo(const SystemParams& params, const ScalingState& state,
                                    std::int64_t samples, std::uint64_t seed) {
  if (samples < 10000)
    throw std::domain_error("survival_monte_carlo needs samples >= 10^4");
  check_state_domain(state);
  if (state.t > 10.0)
    throw CapabilityError("survival_monte_carlo is restricted to t <= 10");

  const int n_particles = params.n;
  const double lambda = params.lambda;
  const double b = state.b;
  const double sigma_r = 1.0 + 1.0 / (b * b);
  const double stddev = 1.0 / std::sqrt(sigma_r);
  const double ph = state.b_dot / (2.0 * b);

  constexpr int kBatches = 32;
  const std::int64_t per_batch = samples / kBatches;
  std::vector<cd> batch_sum(kBatches);
  parallel_for_index(kBatches, [&](std::size_t j) {
    CounterRng rng(CounterRng::derive_seed(seed, j));
    KahanComplexSum<double> acc;
    std::vector<double> q(n_particles);
    for (std::int64_t s = 0; s < per_batch; ++s) {
      double q_sq = 0.0;
      for (int i = 0; i < n_particles; ++i) {
        q[i] = rng.next_normal() * stddev;
        q_sq += q[i] * q[i];
      }
      double log_jastrow = 0.0;
      if (lambda > 0.0) {
        for (int i = 0; i < n_particles; ++i)
          for (int j2 = i + 1; j2 < n_particles; ++j2)
            log_jastrow += 2.0 * lambda * std::log(std::abs(q[i] - q[j2]));
      }
      acc += std::polar(std::exp(log_jastrow), ph * q_sq);
    }
    batch_sum[j] = acc.value();
  });

  KahanComplexSum<double> total_acc;
  for (const cd& s : batch_sum) total_acc += s;
  const cd total = total_acc.value();
  const double n_total = static_cast<double>(per_batch) * kBatches;

  const double log_c = mehta_constant(params);
  const double log_pref = -2.0 * log_c - params.beta() * std::log(b) +
                          n_particles * std::log(2.0 * M_PI / sigma_r);
  const auto pipeline = [&](cd mean) {
    return std::exp(log_pref + 2.0 * std::log(std::abs(mean)));
  };

  OracleEstimate est;
  est.method = OracleMethod::MonteCarlo;
  est.seed = seed;
  est.evaluations = per_batch * kBatches;
  est.value = pipeline(total / n_total);
  est.accuracy_warning = state.t > 5.0 && samples < 1000000;

  // Jackknife through the full nonlinear pipeline.
  std::vector<double> leave_out(kBatches);
  double jk_mean = 0.0;
  for (int j = 0; j < kBatches; ++j) {
    const cd mean_j = (total - batch_sum[j]) / (n_total - per_batch);
    leave_out[j] = pipeline(mean_j);
    jk_mean += leave_out[j];
  }
  jk_mean /= kBatches;
  double var = 0.0;
  for (int j = 0; j < kBatches; ++j)
    var += (leave_out[j] - jk_mean) * (leave_out[j] - jk_mean);
  est.std_error = std::sqrt(var * (kBatches - 1.0) / kBatches);
  return est;
}

namespace {

// Real Gaussian-Jastrow integral on the box [-a/2, a/2]^N with weight
// exp(-q^2/b^2), plain tensor Gauss-Legendre.
double plain_box_integral(int n_particles, double lambda, double b, double a, int nodes,
                          std::int64_t& evals) {
  const auto& rule = gauss_legendre(nodes);
  std::vector<double> q(nodes), w(nodes);
  for (int k = 0; k < nodes; ++k) {
    q[k] = rule.nodes[k] * a / 2.0;
    w[k] = rule.weights[k] * a / 2.0 * std::exp(-q[k] * q[k] / (b * b));
  }
  evals = 1;
  for (int d = 0; d < n_particles; ++d) evals *= nodes;

  if (n_particles == 1) {
    KahanSum<double> acc;
    for (int k = 0; k < nodes; ++k) acc += w[k];
    return acc.value();
  }
  const std::vector<double> j2 = jastrow_table(q, 2.0 * lambda);
  const auto pair = [&](int i, int j) { return j2[i * nodes + j]; };
  std::vector<double> partial(nodes);
  if (n_particles == 2) {
    parallel_for_index(nodes, [&](std::size_t i) {
      KahanSum<double> acc;
      for (int j = 0; j < nodes; ++j) acc += w[j] * pair(i, j);
      partial[i] = w[i] * acc.value();
    });
  } else if (n_particles == 3) {
    parallel_for_index(nodes, [&](std::size_t i) {
      KahanSum<double> acc;
      for (int j = 0; j < nodes; ++j) {
        KahanSum<double> inner;
        for (int k = 0; k < nodes; ++k) inner += w[k] * (pair(i, k) * pair(j, k));
        acc += w[j] * pair(i, j) * inner.value();
      }
      partial[i] = w[i] * acc.value();
    });
  } else {
    parallel_for_index(nodes, [&](std::size_t i) {
      KahanSum<double> acc;
      for (int j = 0; j < nodes; ++j) {
        KahanSum<double> accj;
        for (int k = 0; k < nodes; ++k) {
          KahanSum<double> inner;
          for (int l = 0; l < nodes; ++l)
            inner += w[l] * (pair(i, l) * pair(j, l) * pair(k, l));
          accj += w[k] * (pair(i, k) * pair(j, k)) * inner.value();
        }
        acc += w[j] * pair(i, j) * accj.value();
      }
      partial[i] = w[i] * acc.value();
    });
  }
  KahanSum<double> total;
  for (double p : partial) total += p;
  return total.value();
}

// Ordered-sector version of the box integral for N in {2, 3}; the gap upper
// limit shrinks with x, so the Jacobi rule is rescaled per x node.
double sector_box_integral(int n_particles, double lambda, double b, double a, int nodes,
                           std::int64_t& evals) {
  const auto& gx = gauss_legendre(nodes);
  const double inv_b2 = 1.0 / (b * b);

  if (n_particles == 2) {
    const auto& jr = gauss_jacobi(nodes, 0.0, 2.0 * lambda);
    evals = static_cast<std::int64_t>(nodes) * nodes;
    std::vector<double> partial(nodes);
    parallel_for_index(nodes, [&](std::size_t i) {
      const double x = gx.nodes[i] * a / 2.0;
      const double rx = a / 2.0 - x;
      KahanSum<double> acc;
      for (int j = 0; j < nodes; ++j) {
        const double r = rx * (1.0 + jr.nodes[j]) / 2.0;
        const double q2 = x + r;
        acc += jr.weights[j] * std::exp(-(x * x + q2 * q2) * inv_b2);
      }
      partial[i] = gx.weights[i] * (a / 2.0) *
                   std::pow(rx / 2.0, 2.0 * lambda + 1.0) * acc.value();
    });
    KahanSum<double> total;
    for (double p : partial) total += p;
    return 2.0 * total.value();
  }

  // N == 3
  const auto& jr = gauss_jacobi(nodes, 0.0, 6.0 * lambda + 1.0);
  const auto& jc = gauss_jacobi(nodes, 2.0 * lambda, 2.0 * lambda);
  evals = static_cast<std::int64_t>(nodes) * nodes * nodes;
  const double c_scale = std::pow(0.5, 4.0 * lambda + 1.0);
  std::vector<double> partial(nodes);
  parallel_for_index(nodes, [&](std::size_t i) {
    const double x = gx.nodes[i] * a / 2.0;
    const double rx = a / 2.0 - x;
    KahanSum<double> acc;
    for (int j = 0; j < nodes; ++j) {
      const double r = rx * (1.0 + jr.nodes[j]) / 2.0;
      KahanSum<double> inner;
      for (int k = 0; k < nodes; ++k) {
        const double c = (1.0 + jc.nodes[k]) / 2.0;
        const double q2 = x + r * c;
        const double q3 = x + r;
        inner += jc.weights[k] * std::exp(-(x * x + q2 * q2 + q3 * q3) * inv_b2);
      }
      acc += jr.weights[j] * inner.value();
    }
    partial[i] = gx.weights[i] * (a / 2.0) *
                 std::pow(rx / 2.0, 6.0 * lambda + 2.0) * c_scale * acc.value();
  });
  KahanSum<double> total;
  for (double p : partial) total += p;
  return 6.0 * total.value();
}

}  // namespace

OracleEstimate nonescape_quadrature(const SystemParams& params, double b, double a,
                                    int nodes) {
  if (params.n > 4) throw CapabilityError("nonescape_quadrature supports N <= 4");
  if (!(b > 0.0)) throw std::domain_error("nonescape_quadrature: b must be > 0");
  if (!(a > 0.0)) throw std::domain_error("nonescape_quadrature: a must be > 0");
  const int n = resolve_nodes(nodes, integer_coupling(params.lambda) ? 80 : 64);

  OracleEstimate est;
  est.std_error = 0.0;
  if (n < 40) est.accuracy_warning = true;
  const bool plain =
      params.n == 1 || integer_coupling(params.lambda) || params.n == 4;
  if (plain) {
    est.method = OracleMethod::GaussLegendre;
    if (params.n >= 2 && !integer_coupling(params.lambda)) est.accuracy_warning = true;
    est.value = plain_box_integral(params.n, params.lambda, b, a, n, est.evaluations);
  } else {
    est.method = OracleMethod::OrderedSectorGauss;
    est.value = sector_box_integral(params.n, params.lambda, b, a, n, est.evaluations);
  }
  return est;
}

OracleEstimate mehta_constant_numeric(const SystemParams& params, int nodes) {
  if (params.n > 3) throw CapabilityError("mehta_constant_numeric supports N <= 3");
  const int n = resolve_nodes(nodes, integer_coupling(params.lambda) ? 80 : 64);
  OracleEstimate est;
  if (n < 40) est.accuracy_warning = true;
  // Weight e^{-q^2} is sigma = 2 in the survival-integral convention.
  const cd integral = gaussian_jastrow_integral(params.n, params.lambda, cd(2.0, 0.0), n,
                                                est.method, est.accuracy_warning,
                                                est.evaluations);
  est.value = integral.real();
  return est;
}

OracleEstimate selberg_unit_quadrature(int n, double g, int nodes) {
  if (n < 1 || n > 3)
    throw CapabilityError("selberg_unit_quadrature supports 1 <= n <= 3");
  if (!(g >= 0.0)) throw std::domain_error("selberg_unit_quadrature: g must be >= 0");
  const int m = resolve_nodes(nodes, 48);

  OracleEstimate est;
  const auto& gx = gauss_legendre(m);
  // Map [-1,1] -> [0,1].
  std::vector<double> x(m), wx(m);
  for (int k = 0; k < m; ++k) {
    x[k] = (1.0 + gx.nodes[k]) / 2.0;
    wx[k] = gx.weights[k] / 2.0;
  }

  if (n == 1) {
    est.method = OracleMethod::GaussLegendre;
    est.evaluations = m;
    KahanSum<double> acc;
    for (int k = 0; k < m; ++k) acc += wx[k];
    est.value = acc.value();
    return est;
  }

  if (integer_coupling(g)) {
    est.method = OracleMethod::GaussLegendre;
    const std::vector<double> j2 = jastrow_table(x, 2.0 * g);
    const auto pair = [&](int i, int j) { return j2[i * m + j]; };
    if (n == 2) {
      est.evaluations = static_cast<std::int64_t>(m) * m;
      KahanSum<double> acc;
      for (int i = 0; i < m; ++i) {
        KahanSum<double> inner;
        for (int j = 0; j < m; ++j) inner += wx[j] * pair(i, j);
        acc += wx[i] * inner.value();
      }
      est.value = acc.value();
    } else {
      est.evaluations = static_cast<std::int64_t>(m) * m * m;
      KahanSum<double> acc;
      for (int i = 0; i < m; ++i) {
        KahanSum<double> mid;
        for (int j = 0; j < m; ++j) {
          KahanSum<double> inner;
          for (int k = 0; k < m; ++k) inner += wx[k] * (pair(i, k) * pair(j, k));
          mid += wx[j] * pair(i, j) * inner.value();
        }
        acc += wx[i] * mid.value();
      }
      est.value = acc.value();
    }
    return est;
  }

  // Ordered sector with the top coordinate as the outer variable.
  est.method = OracleMethod::OrderedSectorGauss;
  if (n == 2) {
    const auto& jr = gauss_jacobi(m, 0.0, 2.0 * g);
    est.evaluations = static_cast<std::int64_t>(m) * m;
    KahanSum<double> acc;
    for (int i = 0; i < m; ++i) {
      KahanSum<double> inner;
      for (int j = 0; j < m; ++j) inner += jr.weights[j];
      acc += wx[i] * std::pow(x[i] / 2.0, 2.0 * g + 1.0) * inner.value();
    }
    est.value = 2.0 * acc.value();
  } else {
    const auto& jr = gauss_jacobi(m, 0.0, 6.0 * g + 1.0);
    const auto& jc = gauss_jacobi(m, 2.0 * g, 2.0 * g);
    est.evaluations = static_cast<std::int64_t>(m) * m * m;
    const double c_scale = std::pow(0.5, 4.0 * g + 1.0);
    double wr_sum = 0.0, wc_sum = 0.0;
    for (int j = 0; j < m; ++j) wr_sum += jr.weights[j];
    for (int k = 0; k < m; ++k) wc_sum += jc.weights[k];
    KahanSum<double> acc;
    for (int i = 0; i < m; ++i)
      acc += wx[i] * std::pow(x[i] / 2.0, 6.0 * g + 2.0);
    est.value = 6.0 * c_scale * wr_sum * wc_sum * acc.value();
  }
  return est;
}

}  // namespace csdecay
