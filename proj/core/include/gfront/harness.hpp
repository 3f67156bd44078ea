#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gfront/diagnostics.hpp"

namespace gfront {

inline constexpr const char* kVersion = "0.1.0";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver configuration plus the measurement policy attached to it.
struct HarnessConfig {
  SolverConfig solver;
  bool adaptive_t_end = false;  // t_end=auto: march until the speed estimate settles
  MeasureSettings measure;
};

enum class SweepAxis { FlowIntensity, Frequency };

struct SweepSpec {
  SweepAxis axis = SweepAxis::FlowIntensity;
  std::vector<double> values;  // nonempty, strictly increasing, >= 0
  HarnessConfig base;
  int workers = 1;
};

struct ParsedConfig {
  HarnessConfig run;
  std::optional<SweepSpec> sweep;
  std::string canonical;  // normalized single-line key=value rendering
  std::string digest;     // FNV-1a 64 of the canonical text, hex
};

/// Parses a flat key=value configuration document ('#' comments allowed).
/// Keys: model, flow, A, omega, d_M, s_L, grid, cfl, t_end, scheme,
/// sweep, sweep_min, sweep_max, sweep_step, workers.
/// Throws ConfigError with a line/field diagnostic.
ParsedConfig parse_config(std::string_view text);

enum class Regime { Complete, Incomplete, Quenched };
const char* to_string(Regime r);

/// Quenched iff the report says so; else Complete iff the burnt fraction
/// behind the front is >= 0.99 at final time; else Incomplete.
Regime classify_regime(const SpeedReport& report, double burnt_fraction);

struct SweepRow {
  double value = 0.0;
  bool failed = false;
  std::string error;
  SpeedReport report;
  std::string record;  // formatted report line for this row
  double burnt_fraction = 1.0;
  Regime regime = Regime::Complete;
  double t_final = 0.0;
  bool watchdog = false;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::FlowIntensity;
  std::vector<SweepRow> rows;      // ordered by axis value
  std::string provenance;          // '#'-prefixed comment block
  bool check_regime_order = false; // strain model, steady flow, A axis
};

/// For strain/steady intensity sweeps the expected classification sequence is
/// Complete* Incomplete* Quenched*. Returns a human-readable note when the
/// computed rows violate that ordering (flagged for review, never a failure).
std::optional<std::string> regime_order_warning(const SweepResult& result);

/// Runs each axis value as an independent simulation (up to spec.workers rows
/// concurrently). Row outputs are deterministic and independent of scheduling;
/// individual failures are recorded per row without aborting the sweep.
SweepResult run_sweep(const SweepSpec& spec);

/// Single-run driver shared by the CLI and the sweep.
MeasureResult run_measured(const HarnessConfig& config);

/// Record format: A,omega,d_M,model,s_T,stderr,quenched,N,M.
std::string format_report_record(const SolverConfig& solver, const SpeedReport& report);

/// History table: provenance comment block, then t,X lines.
void write_history(const FrontHistory& history, const std::string& provenance, std::ostream& out);

/// Writes the sweep record file at `path` and a plot-ready two-column table
/// (axis value, s_T) at `path` + ".xy".
void emit_results(const SweepResult& result, const std::filesystem::path& path);

std::string config_digest(std::string_view canonical);
std::string scheme_metadata(const SolverConfig& solver);
std::string make_provenance(const ParsedConfig& parsed);

}  // namespace gfront
