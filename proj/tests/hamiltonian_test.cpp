#include <cmath>

#include "doctest.h"
#include "gfront/hamiltonian.hpp"
#include "oracles.hpp"

using namespace gfront;

namespace {

HamiltonianInputs make_inputs(double pm, double pp, double qm, double qp, double u, double v,
                              double a, double b, double c, double s_l = 1.0) {
  HamiltonianInputs in;
  in.grads = {pm, pp, qm, qp};
  // du_dx = a, dv_dy = b, du_dy + dv_dx = c; markstein 1 passes them through.
  in.flow = FlowSample{u, v, a, c, 0.0, b};
  in.laminar_speed = s_l;
  in.markstein = 1.0;
  in.strain_enabled = true;
  return in;
}

int pair_class(double x, double y) {
  const double prod = x * y;
  if (prod > 0.0) return x > 0.0 ? 1 : -1;
  if (prod < 0.0) return 0;
  const double s = x + y;
  return s > 0.0 ? 1 : (s < 0.0 ? -1 : 2);
}

}  // namespace

TEST_CASE("godunov laminar term") {
  CHECK(godunov_laminar(1, 1, 0, 0, 1.0) == 1.0);
  CHECK(godunov_laminar(1, 2, 0, 0, 1.0) == 1.0);
  CHECK(godunov_laminar(-1, 2, 3, -4, 2.0) == doctest::Approx(8.0).epsilon(1e-15));

  SUBCASE("nonnegative, zero iff both selected squares vanish") {
    oracle::Rng rng(17);
    for (int n = 0; n < 50000; ++n) {
      const double pm = rng.grad_atom(), pp = rng.grad_atom();
      const double qm = rng.grad_atom(), qp = rng.grad_atom();
      const double h = godunov_laminar(pm, pp, qm, qp, 1.0);
      CHECK(h >= 0.0);
      const bool p_zero = std::max(pm, 0.0) == 0.0 && std::min(pp, 0.0) == 0.0;
      const bool q_zero = std::max(qm, 0.0) == 0.0 && std::min(qp, 0.0) == 0.0;
      CHECK((h == 0.0) == (p_zero && q_zero));
    }
  }
}

TEST_CASE("upwind advection") {
  CHECK(upwind_advection(1, 5, 0, 0, 2, 0) == 2.0);
  CHECK(upwind_advection(1, 5, 0, 0, -2, 0) == -10.0);
  CHECK(upwind_advection(7, -3, 4, 9, 0, 0) == 0.0);
}

TEST_CASE("Osher-Sethian split terms") {
  SUBCASE("s1 consistency at collapsed arguments") {
    CHECK(osher_sethian_s1(2, 2, 0, 0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("s1 selections") {
    CHECK(osher_sethian_s1(-1, 2, 3, -4, 1.0) == 0.0);
    // a < 0 branch, hand-evaluated from the sign-split tables: p^2 -> 5,
    // q^2 -> 25, value a*5/sqrt(30).
    CHECK(osher_sethian_s1(-1, 2, 3, -4, -1.0) ==
          doctest::Approx(-5.0 / std::sqrt(30.0)).epsilon(1e-15));
  }
  SUBCASE("s2 mirrors s1 with p and q exchanged") {
    CHECK(osher_sethian_s2(1, 1, 1, 1, 0.0) == 0.0);
    CHECK(osher_sethian_s2(0, 0, 2, 2, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(osher_sethian_s2(1, 1, 1, 1, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    oracle::Rng rng(19);
    for (int n = 0; n < 20000; ++n) {
      const double pm = rng.grad_atom(), pp = rng.grad_atom();
      const double qm = rng.grad_atom(), qp = rng.grad_atom();
      const double coef = rng.signed_mag(0.0, 2.0);
      CHECK(osher_sethian_s2(pm, pp, qm, qp, coef) == osher_sethian_s1(qm, qp, pm, pp, coef));
    }
  }
}

TEST_CASE("Roe cross term") {
  CHECK(roe_s3(1, 1, 1, 1, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(roe_s3(2, 2, 1, 3, 1.0) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(roe_s3(1, 1, -1, 1, 2.0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));

  SUBCASE("diffusion only for strictly opposite one-sided signs") {
    // With grads collapsed in one variable the LF term must vanish; compare
    // against the central fraction alone.
    oracle::Rng rng(29);
    for (int n = 0; n < 50000; ++n) {
      const double pm = rng.grad_atom(), pp = rng.grad_atom();
      const double qm = rng.grad_atom(), qp = rng.grad_atom();
      const double c = rng.signed_mag(0.1, 2.0);
      const double h = roe_s3(pm, pp, qm, qp, c);
      if (pm * pp >= 0.0 && qm * qp >= 0.0) {
        // no diffusion: |Hhat| is bounded by the largest central fraction
        // magnitude |c|*max|p|*max|q|/hypot
        const double pmax = std::max(std::abs(pm), std::abs(pp));
        const double qmax = std::max(std::abs(qm), std::abs(qp));
        const double bound = pmax > 0 || qmax > 0
                                 ? std::abs(c) * pmax * qmax / std::max(pmax, qmax)
                                 : 0.0;
        CHECK(std::abs(h) <= bound + 1e-12);
      }
    }
  }
}

TEST_CASE("assemble: consistency against the analytic Hamiltonian") {
  oracle::Rng rng(37);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double p = rng.signed_mag(0.01, 3.0), q = rng.signed_mag(0.01, 3.0);
    const double u = rng.signed_mag(0.0, 3.0), v = rng.signed_mag(0.0, 3.0);
    const double a = rng.signed_mag(0.0, 1.0), b = rng.signed_mag(0.0, 1.0),
                 c = rng.signed_mag(0.0, 1.0);
    const double s_l = rng.uniform(0.5, 2.0);
    const auto in = make_inputs(p, p, q, q, u, v, a, b, c, s_l);
    const double got = assemble(in).value;
    worst = std::max(worst, std::abs(got - oracle::hamiltonian(p, q, u, v, s_l, a, b, c)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("assemble: bounds and strain toggling") {
  SUBCASE("planar front: value is s_L everywhere") {
    HamiltonianInputs in;
    in.grads = {1.0, 1.0, 0.0, 0.0};
    in.flow = FlowSample{};
    in.laminar_speed = 1.0;
    CHECK(assemble(in).value == 1.0);
  }

  SUBCASE("d_M = 0 equals strain disabled bitwise") {
    oracle::Rng rng(43);
    for (int n = 0; n < 5000; ++n) {
      HamiltonianInputs in;
      in.grads = {rng.grad_atom(), rng.grad_atom(), rng.grad_atom(), rng.grad_atom()};
      in.flow = FlowSample{rng.signed_mag(0, 2), rng.signed_mag(0, 2), 0.0,
                           rng.signed_mag(0, 2), rng.signed_mag(0, 2), 0.0};
      in.laminar_speed = 1.0;
      in.markstein = 0.0;
      in.strain_enabled = true;
      const double with = assemble(in).value;
      in.strain_enabled = false;
      CHECK(assemble(in).value == with);
    }
  }

  SUBCASE("advective bounds") {
    auto in = make_inputs(1, 2, 3, 4, -2.0, 0.5, 0.25, -0.5, 1.5);
    const HamiltonianValue h = assemble(in);
    CHECK(h.bound_x == doctest::Approx(2.0 + 1.0 + 0.25 + 0.5 + 3.0).epsilon(1e-15));
    CHECK(h.bound_y == doctest::Approx(0.5 + 1.0 + 0.25 + 0.5 + 3.0).epsilon(1e-15));
    in.strain_enabled = false;
    CHECK(assemble(in).bound_x == 3.0);
  }
}

TEST_CASE("weak monotonicity of the continuous sub-terms (crossings included)") {
  // upwind, Godunov, s1, s2 are continuous in every argument, so weak
  // monotonicity holds even when a bump crosses a sign boundary.
  oracle::Rng rng(53);
  long violations = 0;
  const long samples = 150000;
  for (long n = 0; n < samples; ++n) {
    double g[4];
    for (double& x : g) x = rng.grad_atom();
    const double u = rng.signed_mag(0.0, 3.0), v = rng.signed_mag(0.0, 3.0);
    const double a = rng.signed_mag(0.0, 1.0), b = rng.signed_mag(0.0, 1.0);
    const double s_l = rng.uniform(0.5, 2.0);
    const double delta = rng.uniform(1e-3, 1.0);
    const int arg = static_cast<int>(rng.gen() % 4);
    double gb[4] = {g[0], g[1], g[2], g[3]};
    gb[arg] += delta;
    const bool increasing = (arg == 0 || arg == 2);

    const double before[4] = {upwind_advection(g[0], g[1], g[2], g[3], u, v),
                              godunov_laminar(g[0], g[1], g[2], g[3], s_l),
                              osher_sethian_s1(g[0], g[1], g[2], g[3], a),
                              osher_sethian_s2(g[0], g[1], g[2], g[3], b)};
    const double after[4] = {upwind_advection(gb[0], gb[1], gb[2], gb[3], u, v),
                             godunov_laminar(gb[0], gb[1], gb[2], gb[3], s_l),
                             osher_sethian_s1(gb[0], gb[1], gb[2], gb[3], a),
                             osher_sethian_s2(gb[0], gb[1], gb[2], gb[3], b)};
    for (int s = 0; s < 4; ++s) {
      if (increasing ? after[s] < before[s] : after[s] > before[s]) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("weak monotonicity of the Roe term and full assembly within branches") {
  // The Roe/LF switch is discontinuous across pair-classification changes
  // (see the regression below), so monotonicity is asserted for perturbations
  // that keep the bumped pair's classification.
  oracle::Rng rng(61);
  long violations = 0, tested = 0;
  for (long n = 0; n < 200000; ++n) {
    double g[4];
    for (double& x : g) x = rng.grad_atom();
    const double u = rng.signed_mag(0.0, 3.0), v = rng.signed_mag(0.0, 3.0);
    const double a = rng.signed_mag(0.0, 1.0), b = rng.signed_mag(0.0, 1.0),
                 c = rng.signed_mag(0.0, 1.0);
    double delta = rng.uniform(1e-3, 1.0);
    const int arg = static_cast<int>(rng.gen() % 4);
    if (g[arg] < 0.0) delta = std::min(delta, -0.5 * g[arg]);
    double gb[4] = {g[0], g[1], g[2], g[3]};
    gb[arg] += delta;
    const int partner = arg ^ 1;
    if (pair_class(g[arg], g[partner]) != pair_class(gb[arg], gb[partner])) continue;
    ++tested;
    const bool increasing = (arg == 0 || arg == 2);

    const double r0 = roe_s3(g[0], g[1], g[2], g[3], c);
    const double r1 = roe_s3(gb[0], gb[1], gb[2], gb[3], c);
    if (increasing ? r1 < r0 : r1 > r0) ++violations;

    const auto in0 = make_inputs(g[0], g[1], g[2], g[3], u, v, a, b, c);
    const auto in1 = make_inputs(gb[0], gb[1], gb[2], gb[3], u, v, a, b, c);
    const double h0 = assemble(in0).value;
    const double h1 = assemble(in1).value;
    if (increasing ? h1 < h0 : h1 > h0) ++violations;
  }
  INFO("tested ", tested);
  CHECK(tested > 150000);
  CHECK(violations == 0);
}

TEST_CASE("Roe term: the LF switch is discontinuous (known monotonicity gap)") {
  // Pinned counterexample: as q- crosses 0 with p+ < p-, the LF diffusion
  // |c|(p- - p+)/2 switches off and the value drops while q- increases. This
  // is inherent to the sign-switched scheme; the acceptance suite reports it
  // against the zero-violation criterion.
  const double before = roe_s3(1.0, 0.5, -1e-3, 3.0, 1.0);
  const double after = roe_s3(1.0, 0.5, +1e-3, 3.0, 1.0);
  CHECK(before > after);  // weak monotonicity in q- fails across the switch
  CHECK(before == doctest::Approx(0.25).epsilon(1e-2));
  CHECK(after == doctest::Approx(0.0).epsilon(1e-2));
}

TEST_CASE("positive homogeneity of the strain sub-terms") {
  oracle::Rng rng(71);

  SUBCASE("dyadic scalings are bitwise") {
    for (int n = 0; n < 20000; ++n) {
      const double pm = rng.grad_atom(), pp = rng.grad_atom();
      const double qm = rng.grad_atom(), qp = rng.grad_atom();
      const double c = rng.signed_mag(0.1, 2.0);
      const double lam = std::ldexp(1.0, static_cast<int>(rng.gen() % 7) - 3);
      CHECK(osher_sethian_s1(lam * pm, lam * pp, lam * qm, lam * qp, c) ==
            lam * osher_sethian_s1(pm, pp, qm, qp, c));
      CHECK(osher_sethian_s2(lam * pm, lam * pp, lam * qm, lam * qp, c) ==
            lam * osher_sethian_s2(pm, pp, qm, qp, c));
      CHECK(roe_s3(lam * pm, lam * pp, lam * qm, lam * qp, c) ==
            lam * roe_s3(pm, pp, qm, qp, c));
    }
  }

  SUBCASE("general scalings within rounding") {
    for (int n = 0; n < 20000; ++n) {
      const double pm = rng.grad_atom(), pp = rng.grad_atom();
      const double qm = rng.grad_atom(), qp = rng.grad_atom();
      const double c = rng.signed_mag(0.1, 2.0);
      const double lam = rng.uniform(0.1, 5.0);
      CHECK(roe_s3(lam * pm, lam * pp, lam * qm, lam * qp, c) ==
            doctest::Approx(lam * roe_s3(pm, pp, qm, qp, c)).epsilon(1e-12));
    }
  }
}
