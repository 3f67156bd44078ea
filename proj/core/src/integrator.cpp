#include "gfront/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gfront/hamiltonian.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gfront {

void validate(const SolverConfig& config) {
  if (config.grid.nx < 8 || config.grid.ny < 8) {
    throw std::invalid_argument("solver: grid below stencil minimum");
  }
  validate(config.flow);
  if (!(config.laminar_speed > 0.0)) throw std::invalid_argument("solver: s_L must be > 0");
  if (config.markstein < 0.0) throw std::invalid_argument("solver: d_M must be >= 0");
  if (!(config.cfl_number > 0.0) || config.cfl_number > 1.0) {
    throw std::invalid_argument("solver: cfl must be in (0, 1]");
  }
  if (!(config.t_end > 0.0)) throw std::invalid_argument("solver: t_end must be > 0");
}

double cfl_step(double bound_x, double bound_y, const Grid& grid, double cfl_number) {
  if (bound_x < 0.0 || bound_y < 0.0) {
    throw std::invalid_argument("cfl_step: bounds must be nonnegative");
  }
  if (bound_x == 0.0 && bound_y == 0.0) {
    throw numerical_error("cfl_step: both advective bounds are zero (stationary problem)");
  }
  return cfl_number / (bound_x / grid.hx + bound_y / grid.hy);
}

Solver::Solver(const SolverConfig& config) : config_(config) {
  validate(config_);
  const Grid& g = config_.grid;
  state_.field = make_field(g, kTwoPi);
  stage1_.assign(g.cells(), 0.0);
  stage2_.assign(g.cells(), 0.0);
  rhs_.assign(g.cells(), 0.0);
  dfx_.assign(dfx_size(g), 0.0);
  u_line_.assign(g.ny, 0.0);
  dudy_line_.assign(g.ny, 0.0);
  v_line_.assign(g.nx, 0.0);
  dvdx_line_.assign(g.nx, 0.0);
  cos_x_.resize(g.nx);
  sin_x_.resize(g.nx);
  cos_y_.resize(g.ny);
  sin_y_.resize(g.ny);
  for (int i = 0; i < g.nx; ++i) {
    cos_x_[i] = std::cos(g.x(i));
    sin_x_[i] = std::sin(g.x(i));
  }
  for (int j = 0; j < g.ny; ++j) {
    cos_y_[j] = std::cos(g.y(j));
    sin_y_[j] = std::sin(g.y(j));
  }
  row_max_.assign(g.nx, 0.0);
  row_poison_.assign(g.nx, 0.0);
}

void Solver::flow_lines(double t) const {
  const Grid& g = config_.grid;
  const double A = config_.flow.intensity;
  const double phase = flow_phase(config_.flow, t);
  for (int j = 0; j < g.ny; ++j) {
    u_line_[j] = A * (cos_y_[j] + sin_y_[j] * phase);
    dudy_line_[j] = A * (-sin_y_[j] + cos_y_[j] * phase);
  }
  for (int i = 0; i < g.nx; ++i) {
    v_line_[i] = A * (cos_x_[i] + sin_x_[i] * phase);
    dvdx_line_[i] = A * (-sin_x_[i] + cos_x_[i] * phase);
  }
}

void Solver::bounds_at(double t, double& bx, double& by) const {
  const Grid& g = config_.grid;
  flow_lines(t);
  const double s_l = config_.laminar_speed;
  if (!config_.strain_enabled) {
    double umax = 0.0, vmax = 0.0;
    for (int j = 0; j < g.ny; ++j) umax = std::max(umax, std::abs(u_line_[j]));
    for (int i = 0; i < g.nx; ++i) vmax = std::max(vmax, std::abs(v_line_[i]));
    bx = umax + s_l;
    by = vmax + s_l;
    return;
  }
  // c = d_M*(du/dy + dv/dx) is the only nonzero strain coefficient for this
  // flow family; the per-node bound |u| + s_L + 2|c| is maximized exactly by
  // scanning one line and the extremes of the other. Evaluation order matches
  // assemble() so the result equals the per-node maximum bitwise.
  const double dm = config_.markstein;
  double emax = dvdx_line_[0], emin = dvdx_line_[0];
  for (int i = 1; i < g.nx; ++i) {
    emax = std::max(emax, dvdx_line_[i]);
    emin = std::min(emin, dvdx_line_[i]);
  }
  double dmax = dudy_line_[0], dmin = dudy_line_[0];
  for (int j = 1; j < g.ny; ++j) {
    dmax = std::max(dmax, dudy_line_[j]);
    dmin = std::min(dmin, dudy_line_[j]);
  }
  double bx_acc = 0.0, by_acc = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double cmax = std::max(std::abs(dm * (dudy_line_[j] + emax)),
                                 std::abs(dm * (dudy_line_[j] + emin)));
    bx_acc = std::max(bx_acc, std::abs(u_line_[j]) + s_l + 2.0 * cmax);
  }
  for (int i = 0; i < g.nx; ++i) {
    const double cmax = std::max(std::abs(dm * (dvdx_line_[i] + dmax)),
                                 std::abs(dm * (dvdx_line_[i] + dmin)));
    by_acc = std::max(by_acc, std::abs(v_line_[i]) + s_l + 2.0 * cmax);
  }
  bx = bx_acc;
  by = by_acc;
}

void Solver::set_state(RunState state) {
  if (state.field.grid.nx != config_.grid.nx || state.field.grid.ny != config_.grid.ny) {
    throw std::invalid_argument("set_state: field grid does not match solver grid");
  }
  state_ = std::move(state);
}

double Solver::current_dt() const {
  double bx = 0.0, by = 0.0;
  bounds_at(state_.t, bx, by);
  return cfl_step(bx, by, config_.grid, config_.cfl_number);
}

void Solver::eval_rhs(const std::vector<double>& values, double x_shift, double t,
                      std::vector<double>& out, double& max_abs) const {
  const Grid& g = config_.grid;
  const int nx = g.nx, ny = g.ny;
  flow_lines(t);
  build_dfx(values.data(), g, x_shift, dfx_.data());

  const double s_l = config_.laminar_speed;
  const double dm = config_.markstein;
  const bool strain = config_.strain_enabled;
  const Scheme scheme = config_.scheme;

#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> dfy(ny + 5), pm(ny), pp(ny), qm(ny), qp(ny), c_row(ny);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int i = 0; i < nx; ++i) {
      one_sided_x_row(scheme, dfx_.data(), g, i, pm.data(), pp.data());
      build_dfy_row(values.data(), g, i, dfy.data());
      one_sided_y_row(scheme, dfy.data(), ny, qm.data(), qp.data());

      const double v_i = v_line_[i];
      const double dvdx_i = dvdx_line_[i];
      double* dest = out.data() + static_cast<std::size_t>(i) * ny;
      if (strain) {
        for (int j = 0; j < ny; ++j) c_row[j] = dm * (dudy_line_[j] + dvdx_i);
      }
      assemble_row(ny, pm.data(), pp.data(), qm.data(), qp.data(), u_line_.data(), v_i, s_l,
                   strain, 0.0, 0.0, c_row.data(), dest);
      double mx = 0.0, poison = 0.0;
      for (int j = 0; j < ny; ++j) {
        const double h = dest[j];
        dest[j] = -h;
        mx = std::max(mx, std::abs(h));
        poison += h * 0.0;  // stays 0 iff every h is finite
      }
      row_max_[i] = mx;
      row_poison_[i] = poison;
    }
  }

  max_abs = 0.0;
  for (int i = 0; i < nx; ++i) max_abs = std::max(max_abs, row_max_[i]);
  for (int i = 0; i < nx; ++i) {
    if (row_poison_[i] == 0.0) continue;
    const double* dest = out.data() + static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) {
      if (!std::isfinite(dest[j])) {
        throw numerical_error("non-finite Hamiltonian at node (" + std::to_string(i) + "," +
                              std::to_string(j) + "), t=" + std::to_string(t));
      }
    }
    throw numerical_error("non-finite Hamiltonian in row " + std::to_string(i) +
                          ", t=" + std::to_string(t));
  }
}

RhsResult Solver::eval(const ScalarField2D& field, double t) const {
  if (field.grid.nx != config_.grid.nx || field.grid.ny != config_.grid.ny) {
    throw std::invalid_argument("rhs: field grid does not match solver grid");
  }
  RhsResult r;
  r.minus_hamiltonian.assign(config_.grid.cells(), 0.0);
  double max_abs = 0.0;
  eval_rhs(field.values, field.x_shift, t, r.minus_hamiltonian, max_abs);
  bounds_at(t, r.bound_x, r.bound_y);
  return r;
}

void Solver::step_once(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  auto& st = state_;
  int stage = 0;
  try {
    tvd_rk3_combine(st.field.values, stage1_, stage2_, rhs_, st.t, dt,
                    [&](int which, double stage_t, std::vector<double>& out) {
                      const std::vector<double>& src =
                          which == 0 ? st.field.values : (which == 1 ? stage1_ : stage2_);
                      double mx = 0.0;
                      eval_rhs(src, st.field.x_shift, stage_t, out, mx);
                      st.stage_max_abs_rhs[stage++] = mx;
                    });
  } catch (const numerical_error& e) {
    throw numerical_error(std::string(e.what()) + " (step " + std::to_string(st.step) +
                          ", stage " + std::to_string(stage) + ")");
  }
  st.t += dt;
  st.step += 1;
  st.last_dt = dt;
}

void Solver::advance_to(double t_target, std::span<const TimeProbe> time_probes,
                        std::span<const StepProbe> step_probes, bool fire_at_target) {
  if (t_target < state_.t) throw std::invalid_argument("advance_to: target is in the past");

  // Next pending multiple of each probe interval, strictly after current t.
  std::vector<double> next_fire(time_probes.size());
  std::vector<double> last_fired(time_probes.size(), -1.0);
  for (std::size_t p = 0; p < time_probes.size(); ++p) {
    const double iv = time_probes[p].interval;
    if (!(iv > 0.0)) throw std::invalid_argument("advance_to: probe interval must be > 0");
    double k = std::floor(state_.t / iv) + 1.0;
    while (k * iv <= state_.t) k += 1.0;
    next_fire[p] = k * iv;
  }

  while (state_.t < t_target) {
    double dt = current_dt();
    // Nearest event: a probe multiple or the target itself.
    double t_event = t_target;
    for (std::size_t p = 0; p < time_probes.size(); ++p) {
      t_event = std::min(t_event, next_fire[p]);
    }
    const double remaining = t_event - state_.t;
    const bool clamp = dt >= remaining * (1.0 - 1e-12);
    if (clamp) dt = remaining;
    step_once(dt);
    if (clamp) state_.t = t_event;  // land exactly, no accumulation drift

    for (std::size_t p = 0; p < time_probes.size(); ++p) {
      if (state_.t == next_fire[p]) {
        time_probes[p].fn(state_);
        last_fired[p] = state_.t;
        const double iv = time_probes[p].interval;
        double k = std::floor(state_.t / iv) + 1.0;
        while (k * iv <= state_.t) k += 1.0;
        next_fire[p] = k * iv;
      }
    }
    for (const StepProbe& sp : step_probes) {
      if (sp.stride > 0 && state_.step % sp.stride == 0) sp.fn(state_);
    }
  }

  if (fire_at_target) {
    for (std::size_t p = 0; p < time_probes.size(); ++p) {
      if (last_fired[p] != state_.t) time_probes[p].fn(state_);
    }
  }
}

RhsResult rhs(const ScalarField2D& field, double t, const SolverConfig& config) {
  Solver solver(config);
  return solver.eval(field, t);
}

RunState run(const SolverConfig& config, std::span<const Observer> observers) {
  Solver solver(config);
  std::vector<StepProbe> step_probes;
  if (config.snapshot_stride > 0) {
    for (const Observer& obs : observers) {
      step_probes.push_back({config.snapshot_stride, obs});
    }
  }
  solver.advance_to(config.t_end, {}, step_probes);
  const bool fired_at_final =
      config.snapshot_stride > 0 && solver.state().step % config.snapshot_stride == 0;
  if (!fired_at_final) {
    for (const Observer& obs : observers) obs(solver.state());
  }
  return solver.state();
}

void tvd_rk3_step(RunState& state, double dt, const SolverConfig& config) {
  Solver solver(config);
  solver.set_state(std::move(state));
  solver.step_once(dt);
  state = solver.state();
}

}  // namespace gfront
