#pragma once

#include <complex>
#include <vector>

#include "csdecay/ermakov.hpp"
#include "csdecay/survival.hpp"

namespace csdecay {

// One split of the survival probability at (t, tau):
//   S(t) = S(t-tau) S(tau) + |M|^2 + 2 Re[M* A(t-tau) A(tau)].
// classical and memory are nonnegative; interference can carry either sign.
struct DecompositionTerms {
  double classical = 0.0;
  double memory = 0.0;
  double interference = 0.0;
  double total = 0.0;
};

// Memory amplitude M(t,tau) = A(t) - A(t-tau) A(tau) from ungauged
// amplitudes. The composition A(t-tau) A(tau) presumes the post-release
// Hamiltonian is time independent, so the protocol must be free (K = 0) on
// [0, t]; otherwise a domain error is raised.
std::complex<double> memory_amplitude(const SystemParams& params,
                                      const ScalingTrajectory& traj, double t,
                                      double tau_split);

// All three terms plus total = S(t). With gauge set, amplitudes are rotated
// by exp(+i beta tau(s)/2) before M and I are formed, the convention used
// for the published decomposition plots; the classical term and the total
// are the same either way.
DecompositionTerms decompose(const SystemParams& params, const ScalingTrajectory& traj,
                             double t, double tau_split, bool gauge = false);

struct NormalizedTerms {
  double tau = 0.0;
  double classical = 0.0;
  double memory = 0.0;
  double interference = 0.0;
};

// Terms normalized by S(t) on a tau grid, ready for plotting.
std::vector<NormalizedTerms> decomposition_scan(const SystemParams& params,
                                                const ScalingTrajectory& traj, double t,
                                                const std::vector<double>& tau_grid,
                                                bool gauge = false);

}  // namespace csdecay
