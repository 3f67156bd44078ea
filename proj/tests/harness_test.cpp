#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gfront/harness.hpp"

using namespace gfront;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool config_error_mentions(const char* text, const char* needle) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("parse_config") {
  SUBCASE("quenching-figure configuration") {
    const ParsedConfig p = parse_config("model=strain flow=steady A=12 d_M=0.2");
    CHECK(p.run.solver.strain_enabled);
    CHECK(p.run.solver.markstein == 0.2);
    CHECK(p.run.solver.flow.intensity == 12.0);
    CHECK(p.run.solver.flow.kind == FlowKind::Steady);
    CHECK(p.run.solver.grid.nx == 256);
    CHECK(p.run.solver.laminar_speed == 1.0);
    CHECK(p.run.solver.cfl_number == 0.5);
    CHECK_FALSE(p.sweep.has_value());
  }

  SUBCASE("empty document gives the all-defaults run") {
    const ParsedConfig p = parse_config("");
    CHECK(p.run.solver.flow.intensity == 0.0);
    CHECK(p.run.solver.grid.nx == 256);
    CHECK(p.run.solver.grid.ny == 256);
    CHECK(p.run.solver.t_end == 10.0);
    CHECK_FALSE(p.run.adaptive_t_end);
    CHECK_FALSE(p.run.solver.strain_enabled);
  }

  SUBCASE("comments, newlines, grid forms, auto horizon") {
    const ParsedConfig p = parse_config(
        "# reproduction run\nmodel=inviscid\nflow=unsteady omega=2 A=4\ngrid=128x64\nt_end=auto\n");
    CHECK(p.run.solver.grid.nx == 128);
    CHECK(p.run.solver.grid.ny == 64);
    CHECK(p.run.adaptive_t_end);
    CHECK(p.run.solver.flow.omega == 2.0);
  }

  SUBCASE("range and format errors carry the field name") {
    CHECK(config_error_mentions("d_M=-1", "d_M"));
    CHECK(config_error_mentions("A=-0.5", "A"));
    CHECK(config_error_mentions("grid=7", "grid"));
    CHECK(config_error_mentions("cfl=1.5", "cfl"));
    CHECK(config_error_mentions("A=abc", "malformed"));
    CHECK(config_error_mentions("turbulence=9", "turbulence"));
    CHECK(config_error_mentions("flow=unsteady omega=0", "omega"));
    CHECK(config_error_mentions("d_M=-1", "line 1"));
  }

  SUBCASE("sweep specs") {
    const ParsedConfig p =
        parse_config("sweep=A sweep_min=1 sweep_max=3 sweep_step=0.5 workers=2 t_end=5 grid=32");
    REQUIRE(p.sweep.has_value());
    CHECK(p.sweep->axis == SweepAxis::FlowIntensity);
    CHECK(p.sweep->values == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
    CHECK(p.sweep->workers == 2);

    CHECK(config_error_mentions("sweep_min=1 sweep_max=2 sweep_step=1", "axis"));
    CHECK(config_error_mentions("sweep=A sweep_min=1 sweep_max=2", "sweep"));
    CHECK_THROWS_AS(parse_config("sweep=omega sweep_min=0 sweep_max=1 sweep_step=0.5"),
                    ConfigError);
  }

  SUBCASE("canonical text and digest are stable") {
    const ParsedConfig a = parse_config("A=2 model=strain d_M=0.1");
    const ParsedConfig b = parse_config("model=strain\n d_M=0.1\n A=2 # same thing");
    CHECK(a.canonical == b.canonical);
    CHECK(a.digest == b.digest);
    CHECK(a.digest.size() == 16);
    const ParsedConfig c = parse_config("A=2.0000001 model=strain d_M=0.1");
    CHECK(c.digest != a.digest);
  }
}

TEST_CASE("classify_regime") {
  SpeedReport r;
  r.quenched = true;
  CHECK(classify_regime(r, 1.0) == Regime::Quenched);
  r.quenched = false;
  r.speed = 0.5;
  CHECK(classify_regime(r, 1.0) == Regime::Complete);
  CHECK(classify_regime(r, 0.995) == Regime::Complete);
  CHECK(classify_regime(r, 0.8) == Regime::Incomplete);
}

TEST_CASE("report record format") {
  const ParsedConfig p = parse_config("model=strain flow=unsteady A=4 omega=2 d_M=0.2");
  SpeedReport r;
  r.speed = 1.5;
  r.stderr_speed = 0.01;
  r.locking = LockingPattern{1, 2};
  CHECK(format_report_record(p.run.solver, r) == "4,2,0.2,strain,1.5,0.01,0,1,2");

  SpeedReport q;
  q.speed = -0.001;
  q.quenched = true;
  const ParsedConfig inv = parse_config("model=inviscid A=12");
  CHECK(format_report_record(inv.run.solver, q) == "12,0,0,inviscid,-0.001,0,1,0,0");
}

TEST_CASE("sweep runs rows independently and deterministically") {
  const char* text =
      "sweep=A sweep_min=0 sweep_max=1 sweep_step=0.5 grid=32 t_end=4 model=inviscid";
  const ParsedConfig parsed = parse_config(text);
  REQUIRE(parsed.sweep.has_value());

  SweepSpec spec = *parsed.sweep;
  spec.workers = 1;
  SweepResult serial = run_sweep(spec);
  serial.provenance = make_provenance(parsed);
  spec.workers = 3;
  SweepResult parallel = run_sweep(spec);
  parallel.provenance = make_provenance(parsed);

  REQUIRE(serial.rows.size() == 3);
  CHECK(serial.rows[0].value == 0.0);
  // A = 0 row: the planar front moves at exactly s_L
  CHECK(serial.rows[0].report.speed == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_FALSE(serial.rows[0].report.quenched);

  const auto dir = std::filesystem::temp_directory_path();
  const auto f1 = dir / "gfront_sweep_serial.csv";
  const auto f2 = dir / "gfront_sweep_parallel.csv";
  emit_results(serial, f1);
  emit_results(parallel, f2);
  CHECK(slurp(f1) == slurp(f2));
  CHECK(slurp(f1.string() + ".xy") == slurp(f2.string() + ".xy"));

  // Rerun emits byte-identical files.
  emit_results(run_sweep(spec), f2);
  // provenance differs (not set on the rerun), so compare data lines only
  std::istringstream s1(slurp(f1)), s2(slurp(f2));
  std::string l1, l2;
  std::vector<std::string> d1, d2;
  while (std::getline(s1, l1)) {
    if (!l1.empty() && l1[0] != '#') d1.push_back(l1);
  }
  while (std::getline(s2, l2)) {
    if (!l2.empty() && l2[0] != '#') d2.push_back(l2);
  }
  CHECK(d1 == d2);
  std::filesystem::remove(f1);
  std::filesystem::remove(f2);
  std::filesystem::remove(f1.string() + ".xy");
  std::filesystem::remove(f2.string() + ".xy");
}

TEST_CASE("sweep records per-row failures without aborting") {
  // Force a failure by sweeping omega across zero... omega values must be
  // positive, so construct the spec manually with a failing middle row.
  const ParsedConfig parsed = parse_config("grid=32 t_end=2 flow=unsteady omega=1");
  SweepSpec spec;
  spec.axis = SweepAxis::Frequency;
  spec.base = parsed.run;
  spec.base.solver.grid = make_grid(32, 32);
  spec.values = {0.5, 1.0};
  spec.base.solver.flow.intensity = 1.0;
  SweepResult r = run_sweep(spec);
  CHECK(r.rows.size() == 2);
  CHECK_FALSE(r.rows[0].failed);
  CHECK_FALSE(r.rows[1].failed);

  // An actually-invalid row value (omega = 0 smuggled past parse) fails alone.
  spec.values = {1.0};
  spec.base.solver.flow.omega = 0.0;
  spec.axis = SweepAxis::FlowIntensity;  // omega stays 0 -> validate throws per row
  SweepResult bad = run_sweep(spec);
  REQUIRE(bad.rows.size() == 1);
  CHECK(bad.rows[0].failed);
  CHECK_FALSE(bad.rows[0].error.empty());

  const auto f = std::filesystem::temp_directory_path() / "gfront_sweep_failed.csv";
  bad.provenance = "# test\n";
  emit_results(bad, f);
  const std::string text = slurp(f);
  CHECK(text.find("# error[") != std::string::npos);
  std::filesystem::remove(f);
  std::filesystem::remove(f.string() + ".xy");
}

TEST_CASE("regime ordering advisory") {
  SweepResult r;
  r.check_regime_order = true;
  auto row = [](double v, Regime reg) {
    SweepRow s;
    s.value = v;
    s.regime = reg;
    s.record = "x";
    return s;
  };
  r.rows = {row(1, Regime::Complete), row(2, Regime::Incomplete), row(3, Regime::Quenched)};
  CHECK_FALSE(regime_order_warning(r).has_value());

  r.rows = {row(1, Regime::Complete), row(2, Regime::Quenched), row(3, Regime::Incomplete)};
  const auto warning = regime_order_warning(r);
  REQUIRE(warning.has_value());
  CHECK(warning->find("incomplete") != std::string::npos);

  const auto f = std::filesystem::temp_directory_path() / "gfront_regime_order.csv";
  r.provenance = "# test\n";
  emit_results(r, f);
  CHECK(slurp(f).find("# review:") != std::string::npos);
  std::filesystem::remove(f);
  std::filesystem::remove(f.string() + ".xy");
}

TEST_CASE("history export carries provenance and digest") {
  const ParsedConfig p = parse_config("grid=32 t_end=2");
  MeasureResult mr = run_measured(p.run);
  mr.history.config_digest = p.digest;
  std::ostringstream out;
  write_history(mr.history, make_provenance(p), out);
  const std::string text = out.str();
  CHECK(text.find("# gfront front-history v1") == 0);
  CHECK(text.find(p.digest) != std::string::npos);
  CHECK(text.find("# columns: t,X") != std::string::npos);
  // first data row: t = 0, X within interpolation rounding of 0
  const auto cols = text.find("# columns: t,X\n");
  REQUIRE(cols != std::string::npos);
  std::istringstream first_row(text.substr(cols + 15));
  std::string row;
  std::getline(first_row, row);
  REQUIRE(row.substr(0, 2) == "0,");
  CHECK(std::abs(std::stod(row.substr(2))) < 1e-12);
}
