#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace csdecay {

// Trap-frequency schedule K(t) = [w(t)/w0]^2 driving the Ermakov equation
//   b'' + K(t) b = 1/b^3 ,  b(0) = 1, b'(0) = 0.
//
// SuddenQuench:   K = 0 for t >= 0 (the trap-on history is encoded in the
//                 initial conditions only).
// DelayedRelease: K = 1 for t < t0, K = 0 afterwards.
// Tabulated:      linear interpolation between knots, constant beyond the
//                 range. Negative K (inverted trap) is accepted; experimental.
class FrequencyProtocol {
 public:
  enum class Kind { SuddenQuench, DelayedRelease, Tabulated };

  static FrequencyProtocol sudden_quench();
  static FrequencyProtocol delayed_release(double t0);
  static FrequencyProtocol tabulated(std::vector<double> times, std::vector<double> k_values);

  // Two-column CSV with header "t,k"; times in units of 1/w0.
  static FrequencyProtocol from_csv(const std::string& path);

  Kind kind() const { return kind_; }
  double release_time() const { return t0_; }

  double k_at(double t) const;

  // Times in (t_begin, t_end) where K or its slope jumps; the solver breaks
  // steps exactly there.
  std::vector<double> break_times(double t_begin, double t_end) const;

  // True when K vanishes identically on [t_begin, t_end]; the Ersak
  // composition A(t - tau) A(tau) is only meaningful in that case.
  bool is_free_on(double t_begin, double t_end) const;

  const std::vector<double>& knot_times() const { return times_; }
  const std::vector<double>& knot_values() const { return k_values_; }

 private:
  FrequencyProtocol(Kind kind, double t0) : kind_(kind), t0_(t0) {}

  Kind kind_;
  double t0_ = 0.0;
  std::vector<double> times_;
  std::vector<double> k_values_;
};

// (b, b', tau) at one instant; tau(t) = \int_0^t dt'/b^2 is the conformal
// time of the scaling solution.
struct ScalingState {
  double t = 0.0;
  double b = 1.0;
  double b_dot = 0.0;
  double tau = 0.0;
};

struct SolverOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  double max_step = 0.5;
  // Refinement factor for the residual diagnostic grid.
  int residual_refine = 4;
};

struct SolverMeta {
  std::string method;
  std::string step_policy;
  double max_residual = 0.0;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
};

class ScalingTrajectory {
 public:
  ScalingTrajectory(FrequencyProtocol protocol, std::vector<ScalingState> states,
                    SolverMeta meta);

  const FrequencyProtocol& protocol() const { return protocol_; }
  const std::vector<ScalingState>& states() const { return states_; }
  const SolverMeta& meta() const { return meta_; }

  double t_begin() const { return states_.front().t; }
  double t_end() const { return states_.back().t; }

  // State at arbitrary time inside the covered span. Analytic protocols are
  // evaluated in closed form; tabulated ones by cubic Hermite interpolation
  // between stored grid states (derivatives from the ODE right side).
  ScalingState state_at(double t) const;

 private:
  FrequencyProtocol protocol_;
  std::vector<ScalingState> states_;
  SolverMeta meta_;
};

// Raised when the adaptive integrator cannot continue; carries the last
// time it reached.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double last_time)
      : std::runtime_error(what), last_time(last_time) {}
  double last_time;
};

// b = sqrt(1+t^2), b' = t/b, tau = arctan t. Requires t >= 0.
ScalingState sudden_quench_scaling(double t);

// Free expansion from (b0, v0) at t0: b = sqrt((b0+v0 dt)^2 + dt^2/b0^2).
// tau is continued from tau0 in closed form. Requires b0 > 0, t >= t0.
ScalingState delayed_release_scaling(double b0, double v0, double t0, double t,
                                     double tau0 = 0.0);

// Integrates the Ermakov system (b, b', tau) over the grid (strictly
// increasing, starting at 0) with an adaptive Dormand-Prince RK4(5) pair,
// stepping exactly onto grid points and protocol discontinuities.
ScalingTrajectory solve_scaling(const FrequencyProtocol& protocol,
                                const std::vector<double>& grid,
                                const SolverOptions& opts = {});

// |b'' + K b - b^-3| per interior grid point by centered finite differences;
// points whose stencil straddles a protocol break are skipped (residual 0).
std::vector<double> ermakov_residual(const ScalingTrajectory& traj);

}  // namespace csdecay
