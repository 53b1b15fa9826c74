#include "csdecay/ermakov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace csdecay {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace

FrequencyProtocol FrequencyProtocol::sudden_quench() {
  return FrequencyProtocol(Kind::SuddenQuench, 0.0);
}

FrequencyProtocol FrequencyProtocol::delayed_release(double t0) {
  require(t0 >= 0.0, "delayed_release: t0 must be >= 0");
  return FrequencyProtocol(Kind::DelayedRelease, t0);
}

FrequencyProtocol FrequencyProtocol::tabulated(std::vector<double> times,
                                               std::vector<double> k_values) {
  require(!times.empty() && times.size() == k_values.size(),
          "tabulated: times and k_values must be nonempty and aligned");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    require(times[i] < times[i + 1], "tabulated: times must be strictly increasing");
  for (double k : k_values)
    require(std::isfinite(k), "tabulated: K values must be finite");
  FrequencyProtocol p(Kind::Tabulated, 0.0);
  p.times_ = std::move(times);
  p.k_values_ = std::move(k_values);
  return p;
}

FrequencyProtocol FrequencyProtocol::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open protocol file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty protocol file: " + path);
  // tolerate whitespace and an optional UTF-8 BOM in the header
  std::string header = line;
  header.erase(std::remove_if(header.begin(), header.end(),
                              [](unsigned char c) { return std::isspace(c) || c >= 0x80; }),
               header.end());
  if (header != "t,k")
    throw std::runtime_error("protocol file must start with header 't,k': " + path);
  std::vector<double> ts, ks;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b)) {
      throw std::runtime_error("bad row " + std::to_string(lineno) + " in " + path);
    }
    ts.push_back(std::stod(a));
    ks.push_back(std::stod(b));
  }
  return tabulated(std::move(ts), std::move(ks));
}

double FrequencyProtocol::k_at(double t) const {
  switch (kind_) {
    case Kind::SuddenQuench:
      return t < 0.0 ? 1.0 : 0.0;
    case Kind::DelayedRelease:
      return t < t0_ ? 1.0 : 0.0;
    case Kind::Tabulated: {
      if (t <= times_.front()) return k_values_.front();
      if (t >= times_.back()) return k_values_.back();
      const auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
      const std::size_t lo = hi - 1;
      const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
      return k_values_[lo] + w * (k_values_[hi] - k_values_[lo]);
    }
  }
  return 0.0;
}

std::vector<double> FrequencyProtocol::break_times(double t_begin, double t_end) const {
  std::vector<double> out;
  switch (kind_) {
    case Kind::SuddenQuench:
      break;
    case Kind::DelayedRelease:
      if (t0_ > t_begin && t0_ < t_end) out.push_back(t0_);
      break;
    case Kind::Tabulated:
      for (double tk : times_)
        if (tk > t_begin && tk < t_end) out.push_back(tk);
      break;
  }
  return out;
}

bool FrequencyProtocol::is_free_on(double t_begin, double t_end) const {
  switch (kind_) {
    case Kind::SuddenQuench:
      return t_begin >= 0.0;
    case Kind::DelayedRelease:
      return t_begin >= t0_;
    case Kind::Tabulated: {
      // K is piecewise linear: zero on the span iff zero at span ends and at
      // every interior knot.
      if (k_at(t_begin) != 0.0 || k_at(t_end) != 0.0) return false;
      for (std::size_t i = 0; i < times_.size(); ++i)
        if (times_[i] > t_begin && times_[i] < t_end && k_values_[i] != 0.0) return false;
      return true;
    }
  }
  return false;
}

ScalingState sudden_quench_scaling(double t) {
  require(t >= 0.0, "sudden_quench_scaling: t must be >= 0");
  const double b = std::sqrt(1.0 + t * t);
  return {t, b, t / b, std::atan(t)};
}

ScalingState delayed_release_scaling(double b0, double v0, double t0, double t,
                                     double tau0) {
  require(b0 > 0.0, "delayed_release_scaling: b0 must be > 0");
  require(t >= t0, "delayed_release_scaling: t must be >= t0");
  const double dt = t - t0;
  const double u = b0 + v0 * dt;
  const double b = std::sqrt(u * u + dt * dt / (b0 * b0));
  const double b_dot = (u * v0 + dt / (b0 * b0)) / b;
  // tau integral of 1/b^2 over a quadratic with discriminant 4 is an arctan:
  //   tau(t) - tau0 = atan(A dt + b0 v0) - atan(b0 v0),  A = v0^2 + 1/b0^2.
  const double slope = v0 * v0 + 1.0 / (b0 * b0);
  const double tau = tau0 + std::atan(slope * dt + b0 * v0) - std::atan(b0 * v0);
  return {t, b, b_dot, tau};
}

namespace {

struct Deriv {
  double db, dbdot, dtau;
};

Deriv rhs(const FrequencyProtocol& protocol, double t, double b, double b_dot) {
  const double inv_b2 = 1.0 / (b * b);
  return {b_dot, inv_b2 / b - protocol.k_at(t) * b, inv_b2};
}

// Dormand-Prince 5(4) coefficients.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,       7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct StepResult {
  std::array<double, 3> y;
  double error;  // scaled error estimate, accept when <= 1
};

StepResult dopri_step(const FrequencyProtocol& protocol, double t,
                      const std::array<double, 3>& y, double h,
                      const SolverOptions& opts) {
  std::array<Deriv, 7> k;
  for (int s = 0; s < 7; ++s) {
    double b = y[0], bd = y[1];
    for (int j = 0; j < s; ++j) {
      b += h * kA[s][j] * k[j].db;
      bd += h * kA[s][j] * k[j].dbdot;
    }
    if (b <= 0.0) return {{-1.0, 0.0, 0.0}, std::numeric_limits<double>::infinity()};
    k[s] = rhs(protocol, t + kC[s] * h, b, bd);
  }
  std::array<double, 3> y5 = y, y4 = y;
  for (int s = 0; s < 7; ++s) {
    y5[0] += h * kB5[s] * k[s].db;
    y5[1] += h * kB5[s] * k[s].dbdot;
    y5[2] += h * kB5[s] * k[s].dtau;
    y4[0] += h * kB4[s] * k[s].db;
    y4[1] += h * kB4[s] * k[s].dbdot;
    y4[2] += h * kB4[s] * k[s].dtau;
  }
  double err = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double scale =
        opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
    err = std::max(err, std::abs(y5[i] - y4[i]) / scale);
  }
  return {y5, err};
}

// Integrates from t0 to t1 (no interior protocol breaks), advancing y in place.
void integrate_segment(const FrequencyProtocol& protocol, double t0, double t1,
                       std::array<double, 3>& y, const SolverOptions& opts,
                       SolverMeta& meta) {
  double t = t0;
  double h = std::min(opts.max_step, t1 - t0);
  const double h_min = 16.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(t1));
  while (t < t1) {
    h = std::min(h, t1 - t);
    const StepResult r = dopri_step(protocol, t, y, h, opts);
    if (r.error <= 1.0) {
      t += h;
      y = r.y;
      ++meta.steps_accepted;
      if (y[0] <= 0.0)
        throw SolverError("scaling factor crossed zero (integrity)", t);
      h *= std::clamp(0.9 * std::pow(std::max(r.error, 1e-10), -0.2), 0.2, 5.0);
      h = std::min(h, opts.max_step);
    } else {
      ++meta.steps_rejected;
      h *= std::clamp(0.9 * std::pow(r.error, -0.2), 0.1, 0.9);
      if (h < h_min)
        throw SolverError("step size underflow in Ermakov integration", t);
    }
  }
}

}  // namespace

ScalingTrajectory::ScalingTrajectory(FrequencyProtocol protocol,
                                     std::vector<ScalingState> states, SolverMeta meta)
    : protocol_(std::move(protocol)), states_(std::move(states)), meta_(std::move(meta)) {
  if (states_.empty()) throw std::domain_error("trajectory needs at least one state");
}

ScalingState ScalingTrajectory::state_at(double t) const {
  require(t >= t_begin() && t <= t_end(), "state_at: time outside trajectory span");
  switch (protocol_.kind()) {
    case FrequencyProtocol::Kind::SuddenQuench:
      return sudden_quench_scaling(t);
    case FrequencyProtocol::Kind::DelayedRelease: {
      const double t0 = protocol_.release_time();
      if (t <= t0) return {t, 1.0, 0.0, t};  // static trap is a fixed point
      return delayed_release_scaling(1.0, 0.0, t0, t, t0);
    }
    case FrequencyProtocol::Kind::Tabulated:
      break;
  }
  // Cubic Hermite between bracketing grid states, derivatives from the ODE.
  const auto it = std::lower_bound(
      states_.begin(), states_.end(), t,
      [](const ScalingState& s, double time) { return s.t < time; });
  if (it != states_.end() && it->t == t) return *it;
  const ScalingState& s1 = *it;
  const ScalingState& s0 = *(it - 1);
  const double h = s1.t - s0.t;
  const double u = (t - s0.t) / h;
  const Deriv d0 = rhs(protocol_, s0.t, s0.b, s0.b_dot);
  const Deriv d1 = rhs(protocol_, s1.t, s1.b, s1.b_dot);
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  auto hermite = [&](double y0, double y1, double m0, double m1) {
    return h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
  };
  return {t, hermite(s0.b, s1.b, d0.db, d1.db),
          hermite(s0.b_dot, s1.b_dot, d0.dbdot, d1.dbdot),
          hermite(s0.tau, s1.tau, d0.dtau, d1.dtau)};
}

ScalingTrajectory solve_scaling(const FrequencyProtocol& protocol,
                                const std::vector<double>& grid,
                                const SolverOptions& opts) {
  require(grid.size() >= 2, "solve_scaling: grid needs at least two points");
  require(grid.front() == 0.0, "solve_scaling: grid must start at 0");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    require(grid[i] < grid[i + 1], "solve_scaling: grid must be strictly increasing");

  SolverMeta meta;
  meta.method = "dormand-prince-45";
  meta.step_policy = "adaptive, exact breaks at protocol discontinuities";

  // Integrate onto the refined grid (grid plus subdivisions plus protocol
  // breaks); the extra states feed the finite-difference residual check.
  const int refine = std::max(1, opts.residual_refine);
  std::vector<double> fine;
  std::vector<std::size_t> coarse_index;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    coarse_index.push_back(fine.size());
    fine.push_back(grid[i]);
    for (int r = 1; r < refine; ++r)
      fine.push_back(grid[i] + (grid[i + 1] - grid[i]) * r / refine);
  }
  coarse_index.push_back(fine.size());
  fine.push_back(grid.back());

  std::array<double, 3> y = {1.0, 0.0, 0.0};
  std::vector<ScalingState> fine_states;
  fine_states.reserve(fine.size());
  fine_states.push_back({0.0, 1.0, 0.0, 0.0});
  for (std::size_t i = 0; i + 1 < fine.size(); ++i) {
    double t = fine[i];
    const double t_next = fine[i + 1];
    for (double tb : protocol.break_times(t, t_next)) {
      integrate_segment(protocol, t, tb, y, opts, meta);
      t = tb;
    }
    integrate_segment(protocol, t, t_next, y, opts, meta);
    fine_states.push_back({t_next, y[0], y[1], y[2]});
  }

  if (fine_states.size() >= 5) {
    ScalingTrajectory refined(protocol, fine_states, SolverMeta{});
    for (double r : ermakov_residual(refined))
      meta.max_residual = std::max(meta.max_residual, r);
  }

  std::vector<ScalingState> states;
  states.reserve(grid.size());
  for (std::size_t idx : coarse_index) states.push_back(fine_states[idx]);
  return ScalingTrajectory(protocol, std::move(states), meta);
}

std::vector<double> ermakov_residual(const ScalingTrajectory& traj) {
  const auto& st = traj.states();
  require(st.size() >= 5, "ermakov_residual: need at least 5 grid points");
  const auto& protocol = traj.protocol();
  std::vector<double> out(st.size(), 0.0);
  for (std::size_t i = 1; i + 1 < st.size(); ++i) {
    if (!protocol.break_times(st[i - 1].t, st[i + 1].t).empty()) continue;
    const double hl = st[i].t - st[i - 1].t;
    const double hr = st[i + 1].t - st[i].t;
    const double dd = 2.0 *
                      (hl * st[i + 1].b - (hl + hr) * st[i].b + hr * st[i - 1].b) /
                      (hl * hr * (hl + hr));
    const double b = st[i].b;
    out[i] = std::abs(dd + protocol.k_at(st[i].t) * b - 1.0 / (b * b * b));
  }
  return out;
}

}  // namespace csdecay
