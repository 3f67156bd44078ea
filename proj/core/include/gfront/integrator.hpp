#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gfront/flow.hpp"
#include "gfront/grid.hpp"
#include "gfront/weno.hpp"

namespace gfront {

/// Thrown when the march produces non-finite values or hits a degenerate
/// stationary problem; carries step/node diagnostics in the message.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  Grid grid;
  FlowSpec flow;
  double laminar_speed = 1.0;  // s_L
  double markstein = 0.0;      // d_M
  bool strain_enabled = false;
  double cfl_number = 0.5;
  double t_end = 10.0;
  long snapshot_stride = 0;  // steps between snapshot observer calls, 0 = off
  Scheme scheme = Scheme::Weno5;
};

/// Throws std::invalid_argument on out-of-range values.
void validate(const SolverConfig& config);

struct RunState {
  ScalarField2D field;  // periodic part u of G = x + u
  double t = 0.0;
  long step = 0;
  double last_dt = 0.0;
  std::array<double, 3> stage_max_abs_rhs{};  // per RK stage of the last step
};

struct RhsResult {
  std::vector<double> minus_hamiltonian;
  double bound_x = 0.0;  // grid-max advective bound (see cfl_step)
  double bound_y = 0.0;
};

/// -H at every node plus the grid-max advective bounds. The structural x-term
/// is time independent, so -H is du/dt for the stored periodic part.
RhsResult rhs(const ScalarField2D& field, double t, const SolverConfig& config);

/// dt = cfl / (bound_x/hx + bound_y/hy). Throws numerical_error when both
/// bounds vanish (stationary problem).
double cfl_step(double bound_x, double bound_y, const Grid& grid, double cfl_number);

/// Observer fired whenever the march lands on t = k*interval; the step size
/// is clamped so these times are hit exactly (no accumulation drift).
struct TimeProbe {
  double interval = 0.0;
  std::function<void(const RunState&)> fn;
};

/// Observer fired every `stride` accepted steps.
struct StepProbe {
  long stride = 0;
  std::function<void(const RunState&)> fn;
};

// Shu-Osher TVD-RK3 stage combination. eval(stage, t, out) fills out with the
// time derivative of the corresponding buffer: stage 0 = u, 1 = u1, 2 = u2.
template <class Eval>
void tvd_rk3_combine(std::vector<double>& u, std::vector<double>& u1, std::vector<double>& u2,
                     std::vector<double>& rhs, double t, double dt, Eval&& eval) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
  eval(0, t, rhs);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t k = 0; k < n; ++k) u1[k] = u[k] + dt * rhs[k];
  eval(1, t + dt, rhs);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t k = 0; k < n; ++k) u2[k] = 0.75 * u[k] + 0.25 * (u1[k] + dt * rhs[k]);
  eval(2, t + 0.5 * dt, rhs);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t k = 0; k < n; ++k)
    u[k] = (1.0 / 3.0) * u[k] + (2.0 / 3.0) * (u2[k] + dt * rhs[k]);
}

class Solver {
 public:
  explicit Solver(const SolverConfig& config);

  const SolverConfig& config() const { return config_; }
  const RunState& state() const { return state_; }

  /// Replace the marching state (the field must live on the configured grid).
  void set_state(RunState state);

  /// One TVD-RK3 step with the given dt (stage times t, t+dt, t+dt/2).
  void step_once(double dt);

  /// CFL-limited dt at the current time (bounds depend only on the flow).
  double current_dt() const;

  /// March to exactly t_target, firing probes at their multiples. When
  /// fire_at_target is set, every time probe is also invoked at t_target
  /// (once, even if t_target is one of its multiples).
  void advance_to(double t_target, std::span<const TimeProbe> time_probes = {},
                  std::span<const StepProbe> step_probes = {}, bool fire_at_target = false);

  /// -H and bounds for an arbitrary field at time t (field must live on the
  /// configured grid).
  RhsResult eval(const ScalarField2D& field, double t) const;

 private:
  void flow_lines(double t) const;
  void eval_rhs(const std::vector<double>& values, double x_shift, double t,
                std::vector<double>& out, double& max_abs) const;
  void bounds_at(double t, double& bx, double& by) const;

  SolverConfig config_;
  RunState state_;
  std::vector<double> stage1_, stage2_, rhs_;
  mutable std::vector<double> dfx_;
  mutable std::vector<double> u_line_, dudy_line_, v_line_, dvdx_line_;
  std::vector<double> cos_x_, sin_x_, cos_y_, sin_y_;
  mutable std::vector<double> row_max_, row_poison_;
};

/// Solves the initial-boundary value problem from G(x,0) = x (u = 0) to
/// config.t_end, invoking each observer every config.snapshot_stride steps
/// (when > 0) and once at t_end. Deterministic for a given config,
/// independent of the worker count used internally.
using Observer = std::function<void(const RunState&)>;
RunState run(const SolverConfig& config, std::span<const Observer> observers = {});

/// Spec-shaped single step on a standalone state (allocates; the Solver class
/// is the buffer-reusing path).
void tvd_rk3_step(RunState& state, double dt, const SolverConfig& config);

}  // namespace gfront
