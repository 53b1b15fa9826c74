#include "csdecay/ersak.hpp"

#include <cmath>

namespace csdecay {

namespace {

void check_split(const ScalingTrajectory& traj, double t, double tau_split) {
  if (!(t >= 0.0) || t > traj.t_end())
    throw std::domain_error("ersak: trajectory does not cover [0, t]");
  if (tau_split < 0.0 || tau_split > t)
    throw std::domain_error("ersak: tau_split must lie in [0, t]");
  if (!traj.protocol().is_free_on(0.0, t))
    throw std::domain_error(
        "ersak: decomposition requires K = 0 on [0, t] (time-translation "
        "invariant post-release evolution)");
}

// With K = 0 on [0, t] and b(0) = 1, b'(0) = 0, the scaling state is the
// sudden-quench closed form; no grid interpolation error enters.
std::complex<double> amp_free(const SystemParams& params, double s, bool gauge) {
  return survival_amplitude(params, sudden_quench_scaling(s), gauge);
}

}  // namespace

std::complex<double> memory_amplitude(const SystemParams& params,
                                      const ScalingTrajectory& traj, double t,
                                      double tau_split) {
  check_split(traj, t, tau_split);
  return amp_free(params, t, false) -
         amp_free(params, t - tau_split, false) * amp_free(params, tau_split, false);
}

DecompositionTerms decompose(const SystemParams& params, const ScalingTrajectory& traj,
                             double t, double tau_split, bool gauge) {
  check_split(traj, t, tau_split);
  const std::complex<double> a_total = amp_free(params, t, gauge);
  const std::complex<double> a_left = amp_free(params, t - tau_split, gauge);
  const std::complex<double> a_right = amp_free(params, tau_split, gauge);
  const std::complex<double> m = a_total - a_left * a_right;
  DecompositionTerms terms;
  terms.classical = std::norm(a_left) * std::norm(a_right);
  terms.memory = std::norm(m);
  terms.interference = 2.0 * std::real(std::conj(m) * a_left * a_right);
  terms.total = std::norm(a_total);
  return terms;
}

std::vector<NormalizedTerms> decomposition_scan(const SystemParams& params,
                                                const ScalingTrajectory& traj, double t,
                                                const std::vector<double>& tau_grid,
                                                bool gauge) {
  if (tau_grid.empty()) throw std::domain_error("decomposition_scan: empty tau grid");
  std::vector<NormalizedTerms> out;
  out.reserve(tau_grid.size());
  const double s_total = survival_probability(params, sudden_quench_scaling(t));
  for (double tau : tau_grid) {
    const DecompositionTerms terms = decompose(params, traj, t, tau, gauge);
    out.push_back({tau, terms.classical / s_total, terms.memory / s_total,
                   terms.interference / s_total});
  }
  return out;
}

}  // namespace csdecay
