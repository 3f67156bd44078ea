#include "gfront/selfcheck.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "gfront/diagnostics.hpp"
#include "gfront/hamiltonian.hpp"
#include "gfront/harness.hpp"

namespace gfront {

namespace {

struct Reporter {
  std::ostream& out;
  bool all_ok = true;

  void line(const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "[ok]   " : "[FAIL] ") << name << ": " << detail << "\n";
    all_ok = all_ok && ok;
  }
};

double rand_in(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Direct evaluation of the modeled Hamiltonian on collapsed arguments.
double analytic_h(double p, double q, double u, double v, double s_l, double a, double b,
                  double c) {
  const double norm = std::sqrt(p * p + q * q);
  double h = u * p + v * q + s_l * norm;
  if (norm > 0.0) h += (a * p * p + b * q * q + c * p * q) / norm;
  return h;
}

void check_ghost(Reporter& rep) {
  auto field = make_field(make_grid(64, 64), kTwoPi);
  std::mt19937_64 rng(7);
  for (double& v : field.values) v = rand_in(rng, -3.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::int64_t i = static_cast<std::int64_t>(rand_in(rng, -300.0, 300.0));
    const std::int64_t j = static_cast<std::int64_t>(rand_in(rng, -300.0, 300.0));
    const double d = ghost_value(field, i + 64, j) - ghost_value(field, i, j);
    worst = std::max(worst, std::abs(d - kTwoPi));
  }
  rep.line("ghost wrap", worst < 1e-12, "max |delta - 2pi| = " + std::to_string(worst));
}

void check_flow(Reporter& rep) {
  FlowSpec spec{FlowKind::Unsteady, 2.0, 1.5};
  std::mt19937_64 rng(11);
  double worst = 0.0;
  const double eps = 1e-5;
  for (int n = 0; n < 500; ++n) {
    const double x = rand_in(rng, 0.0, kTwoPi), y = rand_in(rng, 0.0, kTwoPi);
    const double t = rand_in(rng, 0.0, 8.0);
    const FlowSample s = sample_flow(spec, x, y, t);
    const double du_dy = (sample_flow(spec, x, y + eps, t).u - sample_flow(spec, x, y - eps, t).u) /
                         (2.0 * eps);
    const double dv_dx = (sample_flow(spec, x + eps, y, t).v - sample_flow(spec, x - eps, y, t).v) /
                         (2.0 * eps);
    worst = std::max(worst, std::abs(du_dy - s.du_dy) / std::max(1.0, std::abs(s.du_dy)));
    worst = std::max(worst, std::abs(dv_dx - s.dv_dx) / std::max(1.0, std::abs(s.dv_dx)));
  }
  rep.line("flow jacobian", worst < 1e-8, "max rel FD error = " + std::to_string(worst));

  const double disc = verify_secant_form(2.0, 1.5, 100000);
  rep.line("flow phase form", disc < 1e-12, "max discrepancy = " + std::to_string(disc));
}

void check_weno(Reporter& rep) {
  // Linear total field reproduces exactly.
  auto field = make_field(make_grid(64, 64), kTwoPi);
  const GradientField gf = weno5_one_sided(field);
  bool exact = true;
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    exact = exact && gf.p_minus[k] == 1.0 && gf.p_plus[k] == 1.0 && gf.q_minus[k] == 0.0 &&
            gf.q_plus[k] == 0.0;
  }
  rep.line("weno linear exactness", exact, exact ? "p=1, q=0 bitwise" : "mismatch");

  // Convergence on a smooth profile.
  double err_prev = 0.0;
  double order = 0.0;
  for (int n : {64, 128, 256}) {
    auto f = make_field(make_grid(n, 64), kTwoPi);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < 64; ++j) f.at(i, j) = 0.1 * std::sin(f.grid.x(i));
    }
    const GradientField g = weno5_one_sided(f);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const double exact_p = 1.0 + 0.1 * std::cos(f.grid.x(i));
      err = std::max(err, std::abs(g.p_minus[f.grid.index(i, 0)] - exact_p));
    }
    if (err_prev > 0.0) order = std::log2(err_prev / err);
    err_prev = err;
  }
  rep.line("weno order", order >= 4.5, "observed order (128->256) = " + std::to_string(order));
}

void check_hamiltonian(Reporter& rep) {
  std::mt19937_64 rng(23);
  auto mag = [&](double lo, double hi) {
    const double v = rand_in(rng, lo, hi);
    return rng() % 2 ? v : -v;
  };
  double worst = 0.0;
  for (int n = 0; n < 20000; ++n) {
    const double p = mag(0.02, 3.0), q = mag(0.02, 3.0);
    const double u = mag(0.0, 3.0), v = mag(0.0, 3.0);
    const double a = mag(0.0, 1.0), b = mag(0.0, 1.0), c = mag(0.0, 1.0);
    HamiltonianInputs in;
    in.grads = {p, p, q, q};
    in.flow = FlowSample{u, v, a, c, 0.0, b};  // du_dx=a, dv_dy=b, du_dy+dv_dx=c
    in.laminar_speed = 1.0;
    in.markstein = 1.0;
    in.strain_enabled = true;
    const double got = assemble(in).value;
    worst = std::max(worst, std::abs(got - analytic_h(p, q, u, v, 1.0, a, b, c)));
  }
  rep.line("hamiltonian consistency", worst < 1e-12, "max |Hhat - H| = " + std::to_string(worst));

  // Weak monotonicity in each one-sided argument. The Roe cross term is
  // discontinuous across its sign-classification switches (see the
  // acceptance suite), so the assembled check keeps the bumped pair's
  // classification fixed; the other sub-terms are monotone unconditionally.
  auto pair_class = [](double x, double y) {
    const double prod = x * y;
    if (prod > 0.0) return x > 0.0 ? 1 : -1;
    if (prod < 0.0) return 0;
    const double s = x + y;
    return s > 0.0 ? 1 : (s < 0.0 ? -1 : 2);
  };
  long violations = 0;
  long tested = 0;
  for (int n = 0; n < 40000; ++n) {
    double g[4];
    for (double& x : g) {
      const int kind = static_cast<int>(rng() % 8);
      x = kind == 0 ? 0.0 : (kind == 1 ? mag(0.005, 0.02) : mag(0.02, 3.0));
    }
    const double u = mag(0.0, 3.0), v = mag(0.0, 3.0);
    const double a = mag(0.0, 1.0), b = mag(0.0, 1.0), c = mag(0.0, 1.0);
    double delta = rand_in(rng, 1e-3, 1.0);
    const int arg = static_cast<int>(rng() % 4);
    if (g[arg] < 0.0) delta = std::min(delta, -0.5 * g[arg]);
    double bumped[4] = {g[0], g[1], g[2], g[3]};
    bumped[arg] += delta;
    const int other = arg ^ 1;
    if (pair_class(g[arg], g[other]) != pair_class(bumped[arg], bumped[other])) continue;
    ++tested;
    HamiltonianInputs in;
    in.grads = {g[0], g[1], g[2], g[3]};
    in.flow = FlowSample{u, v, a, c, 0.0, b};
    in.laminar_speed = 1.0;
    in.markstein = 1.0;
    in.strain_enabled = true;
    const double before = assemble(in).value;
    in.grads = {bumped[0], bumped[1], bumped[2], bumped[3]};
    const double after = assemble(in).value;
    const bool increasing = (arg == 0 || arg == 2);
    if (increasing ? after < before : after > before) ++violations;
  }
  rep.line("hamiltonian monotonicity", violations == 0,
           std::to_string(violations) + " violations in " + std::to_string(tested) +
               " branch-preserving samples");
}

void check_planar(Reporter& rep) {
  ParsedConfig cfg = parse_config("A=0 grid=64 t_end=5");
  const MeasureResult mr = run_measured(cfg.run);
  const double err = std::abs(mr.history.samples.back().x - 5.0);
  rep.line("planar front", err < 1e-8, "|X(5) - 5| = " + std::to_string(err));
}

void check_determinism(Reporter& rep) {
  ParsedConfig cfg = parse_config("model=strain flow=unsteady A=2 omega=2 d_M=0.2 grid=32 t_end=3");
  const MeasureResult a = run_measured(cfg.run);
  const MeasureResult b = run_measured(cfg.run);
  bool same = a.history.samples.size() == b.history.samples.size();
  if (same) {
    for (std::size_t k = 0; k < a.history.samples.size(); ++k) {
      same = same && a.history.samples[k].x == b.history.samples[k].x;
    }
  }
  rep.line("rerun determinism", same, same ? "histories identical" : "histories differ");
}

}  // namespace

bool run_self_checks(std::ostream& out) {
  Reporter rep{out};
  check_ghost(rep);
  check_flow(rep);
  check_weno(rep);
  check_hamiltonian(rep);
  check_planar(rep);
  check_determinism(rep);
  out << (rep.all_ok ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
  return rep.all_ok;
}

}  // namespace gfront
