#include "gfront/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gfront {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Token {
  std::string key, value;
  int line = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::string_view tok = text.substr(start, i - start);
    const std::size_t eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ConfigError("line " + std::to_string(line) + ": expected key=value, got '" +
                        std::string(tok) + "'");
    }
    out.push_back({std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)), line});
  }
  return out;
}

double parse_double(const Token& t) {
  double v = 0.0;
  const char* first = t.value.data();
  const char* last = first + t.value.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last) {
    throw ConfigError("line " + std::to_string(t.line) + ": field '" + t.key +
                      "' has malformed number '" + t.value + "'");
  }
  return v;
}

long parse_long(const Token& t) {
  long v = 0;
  const char* first = t.value.data();
  const char* last = first + t.value.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last) {
    throw ConfigError("line " + std::to_string(t.line) + ": field '" + t.key +
                      "' has malformed integer '" + t.value + "'");
  }
  return v;
}

[[noreturn]] void range_error(const Token& t, const std::string& what) {
  throw ConfigError("line " + std::to_string(t.line) + ": field '" + t.key + "' " + what +
                    " (got '" + t.value + "')");
}

}  // namespace

std::string config_digest(std::string_view canonical) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string scheme_metadata(const SolverConfig& solver) {
  std::string s = solver.scheme == Scheme::Weno5 ? "weno5-js eps_weno=1e-06" : "first-order";
  return s + " rk=tvd-rk3 cfl=" + fmt12(solver.cfl_number);
}

ParsedConfig parse_config(std::string_view text) {
  // Defaults
  std::string model = "inviscid", flow = "steady", scheme = "weno5";
  double A = 0.0, omega = 2.0, d_m = 0.2, s_l = 1.0, cfl = 0.5;
  int nx = 256, ny = 256;
  double t_end = 10.0;
  bool t_auto = false;
  std::optional<std::string> sweep_axis;
  std::optional<double> sweep_min, sweep_max, sweep_step;
  int workers = 1;

  for (const Token& t : tokenize(text)) {
    if (t.key == "model") {
      if (t.value != "inviscid" && t.value != "strain") range_error(t, "must be inviscid|strain");
      model = t.value;
    } else if (t.key == "flow") {
      if (t.value != "steady" && t.value != "unsteady") range_error(t, "must be steady|unsteady");
      flow = t.value;
    } else if (t.key == "A") {
      A = parse_double(t);
      if (A < 0.0) range_error(t, "must be >= 0");
    } else if (t.key == "omega") {
      omega = parse_double(t);
      if (!(omega > 0.0)) range_error(t, "must be > 0");
    } else if (t.key == "d_M") {
      d_m = parse_double(t);
      if (d_m < 0.0) range_error(t, "must be >= 0");
    } else if (t.key == "s_L") {
      s_l = parse_double(t);
      if (!(s_l > 0.0)) range_error(t, "must be > 0");
    } else if (t.key == "grid") {
      const std::size_t x = t.value.find('x');
      Token tx = t, ty = t;
      if (x == std::string::npos) {
        tx.value = t.value;
        ty.value = t.value;
      } else {
        tx.value = t.value.substr(0, x);
        ty.value = t.value.substr(x + 1);
      }
      nx = static_cast<int>(parse_long(tx));
      ny = static_cast<int>(parse_long(ty));
      if (nx < 8 || ny < 8) range_error(t, "node counts must be >= 8");
    } else if (t.key == "cfl") {
      cfl = parse_double(t);
      if (!(cfl > 0.0) || cfl > 1.0) range_error(t, "must be in (0,1]");
    } else if (t.key == "t_end") {
      if (t.value == "auto") {
        t_auto = true;
      } else {
        t_end = parse_double(t);
        if (!(t_end > 0.0)) range_error(t, "must be > 0 or 'auto'");
      }
    } else if (t.key == "scheme") {
      if (t.value != "weno5" && t.value != "first_order") {
        range_error(t, "must be weno5|first_order");
      }
      scheme = t.value;
    } else if (t.key == "sweep") {
      if (t.value != "A" && t.value != "omega") range_error(t, "must be A|omega");
      sweep_axis = t.value;
    } else if (t.key == "sweep_min") {
      sweep_min = parse_double(t);
    } else if (t.key == "sweep_max") {
      sweep_max = parse_double(t);
    } else if (t.key == "sweep_step") {
      sweep_step = parse_double(t);
    } else if (t.key == "workers") {
      workers = static_cast<int>(parse_long(t));
      if (workers < 1) range_error(t, "must be >= 1");
    } else {
      throw ConfigError("line " + std::to_string(t.line) + ": unknown key '" + t.key + "'");
    }
  }

  ParsedConfig out;
  SolverConfig& sc = out.run.solver;
  sc.grid = make_grid(nx, ny);
  sc.flow.kind = flow == "steady" ? FlowKind::Steady : FlowKind::Unsteady;
  sc.flow.intensity = A;
  sc.flow.omega = flow == "steady" ? 0.0 : omega;
  sc.laminar_speed = s_l;
  sc.strain_enabled = (model == "strain");
  sc.markstein = sc.strain_enabled ? d_m : 0.0;
  sc.cfl_number = cfl;
  sc.scheme = scheme == "weno5" ? Scheme::Weno5 : Scheme::FirstOrder;
  out.run.adaptive_t_end = t_auto;
  sc.t_end = t_auto ? out.run.measure.t_cap : t_end;
  out.run.measure.adaptive = t_auto;

  if (sweep_axis) {
    if (!sweep_min || !sweep_max || !sweep_step) {
      throw ConfigError("sweep requires sweep_min, sweep_max and sweep_step");
    }
    if (!(*sweep_step > 0.0)) throw ConfigError("sweep_step must be > 0");
    if (*sweep_min < 0.0) throw ConfigError("sweep values must be >= 0");
    if (*sweep_max < *sweep_min) throw ConfigError("sweep_max must be >= sweep_min");
    SweepSpec spec;
    spec.axis = *sweep_axis == "A" ? SweepAxis::FlowIntensity : SweepAxis::Frequency;
    for (int k = 0;; ++k) {
      const double v = *sweep_min + k * *sweep_step;
      if (v > *sweep_max * (1.0 + 1e-12) + 1e-15) break;
      spec.values.push_back(v);
    }
    if (spec.axis == SweepAxis::Frequency && !(spec.values.front() > 0.0)) {
      throw ConfigError("omega sweep values must be > 0");
    }
    spec.base = out.run;
    spec.workers = workers;
    out.sweep = std::move(spec);
  } else if (sweep_min || sweep_max || sweep_step) {
    throw ConfigError("sweep_min/sweep_max/sweep_step require the sweep axis key");
  }

  std::string c = "model=" + model + " flow=" + flow + " A=" + fmt(A);
  if (flow == "unsteady") c += " omega=" + fmt(omega);
  if (model == "strain") c += " d_M=" + fmt(d_m);
  c += " s_L=" + fmt(s_l) + " grid=" + std::to_string(nx) + "x" + std::to_string(ny) +
       " cfl=" + fmt(cfl) + " t_end=" + (t_auto ? std::string("auto") : fmt(t_end)) +
       " scheme=" + scheme;
  if (sweep_axis) {
    c += " sweep=" + *sweep_axis + " sweep_min=" + fmt(*sweep_min) +
         " sweep_max=" + fmt(*sweep_max) + " sweep_step=" + fmt(*sweep_step) +
         " workers=" + std::to_string(workers);
  }
  out.canonical = std::move(c);
  out.digest = config_digest(out.canonical);
  return out;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Complete: return "complete";
    case Regime::Incomplete: return "incomplete";
    case Regime::Quenched: return "quenched";
  }
  return "?";
}

Regime classify_regime(const SpeedReport& report, double burnt_fraction) {
  if (report.quenched) return Regime::Quenched;
  return burnt_fraction >= 0.99 ? Regime::Complete : Regime::Incomplete;
}

MeasureResult run_measured(const HarnessConfig& config) {
  MeasureSettings settings = config.measure;
  settings.adaptive = config.adaptive_t_end;
  return measure_speed(config.solver, settings);
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep: empty value list");
  for (std::size_t k = 0; k < spec.values.size(); ++k) {
    if (spec.values[k] < 0.0 || (k > 0 && spec.values[k] <= spec.values[k - 1])) {
      throw ConfigError("sweep: values must be strictly increasing and >= 0");
    }
  }

  SweepResult result;
  result.axis = spec.axis;
  result.rows.resize(spec.values.size());
  result.check_regime_order = spec.axis == SweepAxis::FlowIntensity &&
                              spec.base.solver.strain_enabled &&
                              spec.base.solver.flow.kind == FlowKind::Steady;

  const int workers = std::max(1, std::min<int>(spec.workers, static_cast<int>(spec.values.size())));
#ifdef _OPENMP
  const int omp_per_worker = std::max(1, omp_get_num_procs() / workers);
#endif

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
#ifdef _OPENMP
    omp_set_num_threads(omp_per_worker);
#endif
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= spec.values.size()) break;
      SweepRow& row = result.rows[idx];
      row.value = spec.values[idx];
      HarnessConfig cfg = spec.base;
      if (spec.axis == SweepAxis::FlowIntensity) {
        cfg.solver.flow.intensity = row.value;
      } else {
        cfg.solver.flow.omega = row.value;
      }
      try {
        const MeasureResult mr = run_measured(cfg);
        row.report = mr.report;
        row.record = format_report_record(cfg.solver, mr.report);
        row.burnt_fraction = mr.burnt_fraction;
        row.regime = classify_regime(mr.report, mr.burnt_fraction);
        row.t_final = mr.t_final;
        row.watchdog = mr.watchdog_tripped;
      } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return result;
}

std::string format_report_record(const SolverConfig& solver, const SpeedReport& report) {
  const int n = report.locking ? report.locking->n : 0;
  const int m = report.locking ? report.locking->m : 0;
  std::string s;
  s += fmt12(solver.flow.intensity) + ",";
  s += fmt12(solver.flow.omega) + ",";
  s += fmt12(solver.markstein) + ",";
  s += solver.strain_enabled ? "strain," : "inviscid,";
  s += fmt12(report.speed) + ",";
  s += fmt12(report.stderr_speed) + ",";
  s += report.quenched ? "1," : "0,";
  s += std::to_string(n) + "," + std::to_string(m);
  return s;
}

std::string make_provenance(const ParsedConfig& parsed) {
  std::string p;
  p += "# code: gfront ";
  p += kVersion;
  p += "\n# config: " + parsed.canonical;
  p += "\n# digest: " + parsed.digest;
  p += "\n# scheme: " + scheme_metadata(parsed.run.solver);
  p += "\n";
  return p;
}

void write_history(const FrontHistory& history, const std::string& provenance, std::ostream& out) {
  out << "# gfront front-history v1\n" << provenance << "# columns: t,X\n";
  for (const FrontSample& s : history.samples) {
    out << fmt12(s.t) << ',' << fmt12(s.x) << '\n';
  }
}

std::optional<std::string> regime_order_warning(const SweepResult& result) {
  // Complete may step to Incomplete may step to Quenched; any step backwards
  // is unexpected and flagged for manual review.
  int rank = 0;
  for (const SweepRow& row : result.rows) {
    if (row.failed) continue;
    const int r = row.regime == Regime::Complete ? 0 : (row.regime == Regime::Incomplete ? 1 : 2);
    if (r < rank) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "regime sequence is not Complete*Incomplete*Quenched*: %s reappears at "
                    "value %.12g",
                    to_string(row.regime), row.value);
      return std::string(buf);
    }
    rank = r;
  }
  return std::nullopt;
}

void emit_results(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_results: cannot open '" + path.string() + "'");
  const char* axis = result.axis == SweepAxis::FlowIntensity ? "A" : "omega";
  out << "# gfront sweep v1\n" << result.provenance;
  out << "# axis: " << axis << "\n";
  if (result.check_regime_order) {
    if (const auto warning = regime_order_warning(result)) {
      out << "# review: " << *warning << "\n";
    }
  }
  out << "# columns: A,omega,d_M,model,s_T,stderr,quenched,N,M\n";
  for (const SweepRow& row : result.rows) {
    if (row.failed) {
      out << "# error[" << axis << "=" << fmt12(row.value) << "]: " << row.error << "\n";
      continue;
    }
    out << "# meta[" << axis << "=" << fmt12(row.value) << "]: regime=" << to_string(row.regime)
        << " burnt_fraction=" << fmt12(row.burnt_fraction) << " t_final=" << fmt12(row.t_final)
        << (row.watchdog ? " watchdog=1" : "") << "\n";
    out << row.record << "\n";
  }
  if (!out) throw std::runtime_error("emit_results: write failed for '" + path.string() + "'");

  std::ofstream xy(path.string() + ".xy");
  if (!xy) throw std::runtime_error("emit_results: cannot open '" + path.string() + ".xy'");
  xy << "# " << axis << " s_T\n";
  for (const SweepRow& row : result.rows) {
    if (row.failed) continue;
    xy << fmt12(row.value) << ' ' << fmt12(row.report.speed) << '\n';
  }
}

}  // namespace gfront
