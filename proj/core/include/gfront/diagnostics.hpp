#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gfront/integrator.hpp"

namespace gfront {

struct FrontSample {
  double t = 0.0;
  double x = 0.0;
};

struct FrontHistory {
  std::vector<FrontSample> samples;   // strictly increasing t
  std::optional<double> flow_period;  // 2pi/omega for unsteady runs
  int samples_per_period = 0;         // sampling cadence relative to the flow period
  std::string config_digest;
};

/// Synchronization pattern: the front advances n spatial periods per m flow
/// periods (reduced to lowest terms).
struct LockingPattern {
  int n = 0;
  int m = 0;
};

struct SpeedReport {
  double speed = 0.0;         // trailing-window least-squares slope of X(t)
  double stderr_speed = 0.0;  // fit residual RMS divided by the window length
  bool quenched = false;
  std::optional<LockingPattern> locking;
  double window_lo = 0.0, window_hi = 0.0;
};

/// Rightmost zero upcrossing of the linearly interpolated total field over the
/// extended strip, maximized over rows: X = sup{x : G < 0}. Crossings beyond
/// copy k_max are ignored; with k_max at or above ceil(max|u|/2pi)+1 the
/// answer is independent of k_max. Throws numerical_error if no burnt region
/// exists.
double front_position(const ScalarField2D& field, int k_max);
double front_position(const ScalarField2D& field);

/// Fraction of strip nodes with total field < 0 in [x_lo, x_hi) x [0,2pi).
double burnt_area_fraction(const ScalarField2D& field, double x_lo, double x_hi);

/// Least-squares fit of X vs t over the trailing window
/// [t_end*(1-window_frac), t_end]. quenched = slope below quench_eps AND
/// window displacement below one cell (2pi).
SpeedReport estimate_speed(const FrontHistory& history, double quench_eps, double window_frac);

/// Searches the smallest m <= m_max such that X(t + m*period) - X(t) is
/// constant (within tol) and equal to 2pi*n for an integer 1 <= n <= n_max
/// over the trailing-half period-aligned samples. Requires the history to be
/// sampled on a grid that subdivides the flow period.
std::optional<LockingPattern> detect_locking(const FrontHistory& history, double omega, int n_max,
                                             int m_max, double tol);

struct MeasureSettings {
  double t_initial = 25.0;          // first horizon (snapped to whole flow periods)
  double t_cap = 400.0;             // hard horizon cap
  double rel_slope_tol = 0.005;     // trailing-half slope change per doubling
  double window_frac = 0.5;
  double quench_eps_factor = 0.01;  // quench threshold = factor * s_L
  int n_max = 16, m_max = 16;
  double lock_tol_cells = 2.0;      // locking tolerance = cells * hx
  double sample_dt = 0.25;          // steady-flow sampling cadence
  bool adaptive = true;             // false: march straight to config.t_end
};

struct MeasureResult {
  SpeedReport report;
  FrontHistory history;
  double burnt_fraction = 1.0;  // behind-front window at the final time
  double burnt_window_lo = 0.0, burnt_window_hi = 0.0;
  double t_final = 0.0;
  bool watchdog_tripped = false;  // the field degenerated; history truncated to clean samples
};

/// Runs the configured problem until the turbulent-speed estimate settles
/// (successive horizon doublings change the trailing-half slope by less than
/// rel_slope_tol, or the run is flagged quenched), then reports the fitted
/// speed, locking pattern (unsteady flows) and the burnt fraction behind the
/// front.
MeasureResult measure_speed(const SolverConfig& config, const MeasureSettings& settings = {});

}  // namespace gfront
