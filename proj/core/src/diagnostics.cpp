#include "gfront/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gfront {

namespace {

// Largest copy index k with total(i) + k*shift < 0 <= total(i+1) + k*shift,
// i.e. the rightmost upcrossing contributed by one adjacent node pair.
// Returns false when the pair has no upcrossing at or below k_cap.
bool rightmost_upcrossing(double g0, double g1, double shift, int k_cap, double& k_out,
                          double& frac_out) {
  const double delta = g1 - g0;
  if (!(delta > 0.0)) return false;
  double k = std::floor(-g0 / shift);
  if (g0 + k * shift >= 0.0) k -= 1.0;
  if (k > k_cap) k = k_cap;
  if (g1 + k * shift < 0.0) return false;  // interval empty below the cap
  k_out = k;
  frac_out = -(g0 + k * shift) / delta;
  return true;
}

}  // namespace

double front_position(const ScalarField2D& field, int k_max) {
  const Grid& g = field.grid;
  const double shift = field.x_shift;
  if (!(shift > 0.0)) {
    throw std::invalid_argument("front_position: field has no x-advancing structure");
  }
  bool found = false;
  double best = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double g0 = i * g.hx + field.at(i, j);
      const double g1 = (i + 1 < g.nx) ? (i + 1) * g.hx + field.at(i + 1, j)
                                       : shift + field.at(0, j);
      double k = 0.0, frac = 0.0;
      if (!rightmost_upcrossing(g0, g1, shift, k_max, k, frac)) continue;
      const double x = i * g.hx + k * kTwoPi + frac * g.hx;
      if (!found || x > best) {
        best = x;
        found = true;
      }
    }
  }
  if (!found) throw numerical_error("front_position: no burnt region found");
  return best;
}

double front_position(const ScalarField2D& field) {
  double umax = 0.0;
  for (double v : field.values) umax = std::max(umax, std::abs(v));
  const int k_max = static_cast<int>(std::ceil(umax / kTwoPi)) + 1;
  return front_position(field, k_max);
}

double burnt_area_fraction(const ScalarField2D& field, double x_lo, double x_hi) {
  if (!(x_hi > x_lo)) throw std::invalid_argument("burnt_area_fraction: empty window");
  const Grid& g = field.grid;
  const int k_lo = static_cast<int>(std::floor(x_lo / kTwoPi)) - 1;
  const int k_hi = static_cast<int>(std::ceil(x_hi / kTwoPi)) + 1;
  long total = 0, burnt = 0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double x_base = k * kTwoPi;
    const double v_base = k * field.x_shift;
    for (int i = 0; i < g.nx; ++i) {
      const double x = x_base + i * g.hx;
      if (x < x_lo || x >= x_hi) continue;
      for (int j = 0; j < g.ny; ++j) {
        total += 1;
        if (v_base + i * g.hx + field.at(i, j) < 0.0) burnt += 1;
      }
    }
  }
  if (total == 0) throw std::invalid_argument("burnt_area_fraction: window holds no nodes");
  return static_cast<double>(burnt) / static_cast<double>(total);
}

SpeedReport estimate_speed(const FrontHistory& history, double quench_eps, double window_frac) {
  const auto& s = history.samples;
  if (s.size() < 2) throw std::invalid_argument("estimate_speed: need at least two samples");
  const double t_end = s.back().t;
  const double t_lo = t_end * (1.0 - window_frac);

  std::size_t first = 0;
  while (first < s.size() && s[first].t < t_lo - 1e-12 * std::max(1.0, t_end)) ++first;
  const std::size_t n = s.size() - first;
  if (n < 10) throw std::invalid_argument("estimate_speed: fewer than 10 samples in fit window");

  double tm = 0.0, xm = 0.0;
  for (std::size_t k = first; k < s.size(); ++k) {
    tm += s[k].t;
    xm += s[k].x;
  }
  tm /= n;
  xm /= n;
  double stt = 0.0, stx = 0.0;
  for (std::size_t k = first; k < s.size(); ++k) {
    const double dt = s[k].t - tm;
    stt += dt * dt;
    stx += dt * (s[k].x - xm);
  }
  const double slope = stx / stt;
  double ss_res = 0.0;
  for (std::size_t k = first; k < s.size(); ++k) {
    const double r = s[k].x - (xm + slope * (s[k].t - tm));
    ss_res += r * r;
  }
  const double window = s.back().t - s[first].t;
  const double displacement = s.back().x - s[first].x;

  SpeedReport rep;
  rep.speed = slope;
  rep.stderr_speed = window > 0.0 ? std::sqrt(ss_res / n) / window : 0.0;
  // Forward displacement below one cell; a retreating front is quenched too
  // (it has certainly ceased propagating forward).
  rep.quenched = slope < quench_eps && displacement < kTwoPi;
  rep.window_lo = s[first].t;
  rep.window_hi = s.back().t;
  return rep;
}

std::optional<LockingPattern> detect_locking(const FrontHistory& history, double omega, int n_max,
                                             int m_max, double tol) {
  if (!history.flow_period || history.samples_per_period <= 0) {
    throw std::invalid_argument("detect_locking: history is not sampled on the flow-period grid");
  }
  const double period = kTwoPi / omega;
  if (std::abs(*history.flow_period - period) > 1e-9 * period) {
    throw std::invalid_argument("detect_locking: history was sampled for a different omega");
  }
  const int spp = history.samples_per_period;

  // Period-aligned subsequence (sampling starts at t = 0).
  std::vector<double> px, pt;
  for (std::size_t r = 0; r < history.samples.size(); r += spp) {
    pt.push_back(history.samples[r].t);
    px.push_back(history.samples[r].x);
  }
  if (px.size() < 4) return std::nullopt;

  // Trailing half.
  const double t_lo = pt.back() * 0.5;
  std::size_t first = 0;
  while (first < pt.size() && pt[first] < t_lo - 1e-12 * std::max(1.0, pt.back())) ++first;
  const std::size_t count = px.size() - first;

  for (int m = 1; m <= m_max; ++m) {
    if (count < static_cast<std::size_t>(m) + 3) break;  // need >= 3 increments
    double lo = 0.0, hi = 0.0, mean = 0.0;
    bool init = false;
    const std::size_t k_end = px.size() - m;
    std::size_t n_inc = 0;
    for (std::size_t k = first; k < k_end; ++k) {
      const double d = px[k + m] - px[k];
      if (!init) {
        lo = hi = d;
        init = true;
      } else {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      mean += d;
      n_inc += 1;
    }
    if (n_inc < 3) break;
    mean /= n_inc;
    if (hi - lo > 2.0 * tol) continue;
    if (hi - mean > tol || mean - lo > tol) continue;
    const long n_int = std::llround(mean / kTwoPi);
    if (n_int < 1 || n_int > n_max) continue;
    if (std::abs(mean - n_int * kTwoPi) > tol) continue;
    const long g = std::gcd(n_int, static_cast<long>(m));
    return LockingPattern{static_cast<int>(n_int / g), static_cast<int>(m / g)};
  }
  return std::nullopt;
}

MeasureResult measure_speed(const SolverConfig& config, const MeasureSettings& settings) {
  validate(config);
  const bool unsteady = config.flow.kind == FlowKind::Unsteady;
  const double quench_eps = settings.quench_eps_factor * config.laminar_speed;

  const double horizon0 = settings.adaptive ? std::min(settings.t_initial, settings.t_cap)
                                            : config.t_end;
  double sample_iv = settings.sample_dt;
  int spp = 0;
  double period = 0.0;
  if (unsteady) {
    period = kTwoPi / config.flow.omega;
    // At least 4 samples per period, cadence no coarser than ~1 time unit,
    // and enough samples by the first horizon for the trailing-half fit.
    spp = 4 * static_cast<int>(std::ceil(std::max(1.0, period / 4.0)));
    while ((horizon0 / period) * spp < 40.0 && spp < 4096) spp *= 2;
    sample_iv = period / spp;
  } else {
    sample_iv = std::min(settings.sample_dt, horizon0 / 40.0);
  }

  MeasureResult result;
  result.history.flow_period = unsteady ? std::optional<double>(period) : std::nullopt;
  result.history.samples_per_period = spp;

  // Quenched strain states steepen the level set exponentially (anti-burning
  // piles level sets onto the stagnation zone and eventually corrupts the
  // field), so sampling watches for unphysical front jumps: the front cannot
  // outrun the advective bound. On a trip the march stops and the clean
  // samples collected so far carry the measurement.
  struct CorruptedField {};
  const double a_max = config.flow.intensity * (unsteady ? 2.0 : 1.0);
  const double speed_cap =
      10.0 * (a_max + config.laminar_speed + 4.0 * config.markstein * a_max) + 10.0;

  Solver solver(config);
  result.history.samples.push_back({0.0, front_position(solver.state().field)});
  const TimeProbe probe{sample_iv, [&](const RunState& st) {
                          const double x = front_position(st.field);
                          const FrontSample& last = result.history.samples.back();
                          if (std::abs(x - last.x) >
                              speed_cap * (st.t - last.t) + 2.0 * kTwoPi) {
                            throw CorruptedField{};
                          }
                          result.history.samples.push_back({st.t, x});
                        }};
  const std::vector<TimeProbe> probes{probe};

  // Horizon schedule: fixed t_end, or doublings from t_initial until the
  // trailing-half slope settles. Unsteady horizons snap to an even number of
  // flow periods so fit windows span whole periods.
  auto snap_up = [&](double t) {
    if (!unsteady) return t;
    return 2.0 * period * std::ceil(t / (2.0 * period));
  };

  // March in horizon stages; a CorruptedField or non-finite abort ends the
  // campaign with the clean history collected so far.
  auto advance_stage = [&](double target) {
    try {
      solver.advance_to(target, probes);
      return true;
    } catch (const CorruptedField&) {
      result.watchdog_tripped = true;
      return false;
    } catch (const numerical_error&) {
      result.watchdog_tripped = true;
      return false;
    }
  };

  if (!settings.adaptive) {
    advance_stage(config.t_end);
  } else {
    double horizon = snap_up(std::min(settings.t_initial, settings.t_cap));
    bool alive = advance_stage(horizon);
    if (result.history.samples.size() >= 12) {
      SpeedReport prev = estimate_speed(result.history, quench_eps, settings.window_frac);
      while (alive && horizon < settings.t_cap) {
        double next = snap_up(std::min(2.0 * horizon, settings.t_cap));
        if (next <= horizon) break;
        alive = advance_stage(next);
        horizon = next;
        const SpeedReport cur = estimate_speed(result.history, quench_eps, settings.window_frac);
        const double change = std::abs(cur.speed - prev.speed);
        prev = cur;
        if (change < settings.rel_slope_tol * std::max(std::abs(cur.speed), 1e-12)) break;
      }
    }
  }
  result.t_final = result.history.samples.back().t;

  result.report = estimate_speed(result.history, quench_eps, settings.window_frac);
  if (unsteady) {
    const double tol = settings.lock_tol_cells * config.grid.hx;
    result.report.locking =
        detect_locking(result.history, config.flow.omega, settings.n_max, settings.m_max, tol);
  }

  // Burnt fraction well behind the front: the middle third of the swept
  // territory sits beyond the corrugation zone (which is itself partially
  // unburnt even in complete combustion) yet past the initial transient.
  // Stagnated pockets persist there; a cleanly burning front leaves none.
  const double x_front = result.history.samples.back().x;
  double lo, hi;
  if (x_front >= 6.0 * kTwoPi) {
    lo = x_front / 3.0;
    hi = 2.0 * x_front / 3.0;
  } else {
    lo = 0.0;
    hi = std::max(x_front - kTwoPi, config.grid.hx);
  }
  result.burnt_window_lo = lo;
  result.burnt_window_hi = hi;
  result.burnt_fraction = burnt_area_fraction(solver.state().field, lo, hi);
  return result;
}

}  // namespace gfront
