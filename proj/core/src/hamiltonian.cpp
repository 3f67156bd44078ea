#include "gfront/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

namespace gfront {

namespace {

inline double sq(double x) { return x * x; }

// coef * own^2 / sqrt(own^2 + other^2) with the sign-split square selections.
// `own` is the variable in the numerator. For coef > 0 the term grows with
// own^2 and shrinks with other^2, so the own-pair takes the inward selection
// min(own+,0)^2 + max(own-,0)^2 and the other-pair the outward one; coef < 0
// swaps both.
inline double osher_sethian_split(double own_m, double own_p, double oth_m, double oth_p,
                                  double coef) {
  if (coef == 0.0) return 0.0;
  double own2, oth2;
  if (coef > 0.0) {
    own2 = sq(std::min(own_p, 0.0)) + sq(std::max(own_m, 0.0));
    oth2 = sq(std::min(oth_m, 0.0)) + sq(std::max(oth_p, 0.0));
  } else {
    own2 = sq(std::min(own_m, 0.0)) + sq(std::max(own_p, 0.0));
    oth2 = sq(std::min(oth_p, 0.0)) + sq(std::max(oth_m, 0.0));
  }
  const double den2 = own2 + oth2;
  if (den2 == 0.0) return 0.0;
  return coef * own2 / std::sqrt(den2);
}

}  // namespace

double godunov_laminar(double pm, double pp, double qm, double qp, double laminar_speed) {
  const double p2 = std::max(sq(std::max(pm, 0.0)), sq(std::min(pp, 0.0)));
  const double q2 = std::max(sq(std::max(qm, 0.0)), sq(std::min(qp, 0.0)));
  return laminar_speed * std::sqrt(p2 + q2);
}

double upwind_advection(double pm, double pp, double qm, double qp, double u, double v) {
  const double p_sel = u > 0.0 ? pm : (u < 0.0 ? pp : 0.5 * (pm + pp));
  const double q_sel = v > 0.0 ? qm : (v < 0.0 ? qp : 0.5 * (qm + qp));
  return u * p_sel + v * q_sel;
}

double osher_sethian_s1(double pm, double pp, double qm, double qp, double a) {
  return osher_sethian_split(pm, pp, qm, qp, a);
}

double osher_sethian_s2(double pm, double pp, double qm, double qp, double b) {
  return osher_sethian_split(qm, qp, pm, pp, b);
}

double roe_s3(double pm, double pp, double qm, double qp, double c) {
  if (c == 0.0) return 0.0;

  const double prod_q = qm * qp;
  const bool q_opposite = prod_q < 0.0;
  // Common sign of the q-pair; boundary cases (one side exactly zero) take the
  // sign of the sum, matching the continuous limit of the defined branches.
  const double q_sign = q_opposite ? 0.0 : (qm + qp > 0.0 ? 1.0 : (qm + qp < 0.0 ? -1.0 : 0.0));

  const double prod_p = pm * pp;
  const bool p_opposite = prod_p < 0.0;
  const double p_sign = p_opposite ? 0.0 : (pm + pp > 0.0 ? 1.0 : (pm + pp < 0.0 ? -1.0 : 0.0));

  const double cq = c * q_sign;
  const double p_sel = q_opposite ? 0.5 * (pm + pp) : (cq > 0.0 ? pm : (cq < 0.0 ? pp : 0.5 * (pm + pp)));
  const double cp = c * p_sign;
  const double q_sel = p_opposite ? 0.5 * (qm + qp) : (cp > 0.0 ? qm : (cp < 0.0 ? qp : 0.5 * (qm + qp)));

  const double den2 = p_sel * p_sel + q_sel * q_sel;
  const double central = den2 > 0.0 ? c * p_sel * q_sel / std::sqrt(den2) : 0.0;

  const double cbar_p = q_opposite ? std::abs(c) : 0.0;
  const double cbar_q = p_opposite ? std::abs(c) : 0.0;
  return central - cbar_p * (0.5 * (pp - pm)) - cbar_q * (0.5 * (qp - qm));
}

void assemble_row(int n, const double* pm, const double* pp, const double* qm, const double* qp,
                  const double* u, double v, double laminar_speed, bool strain_enabled, double a,
                  double b, const double* c, double* h_out) {
  for (int j = 0; j < n; ++j) {
    const double pmj = pm[j], ppj = pp[j], qmj = qm[j], qpj = qp[j];
    const double uj = u[j];

    const double p_vel = uj > 0.0 ? pmj : (uj < 0.0 ? ppj : 0.5 * (pmj + ppj));
    const double q_vel = v > 0.0 ? qmj : (v < 0.0 ? qpj : 0.5 * (qmj + qpj));

    const double p2 = std::max(sq(std::max(pmj, 0.0)), sq(std::min(ppj, 0.0)));
    const double q2 = std::max(sq(std::max(qmj, 0.0)), sq(std::min(qpj, 0.0)));

    double h = uj * p_vel + v * q_vel + laminar_speed * std::sqrt(p2 + q2);

    if (strain_enabled) {
      const double cj = c[j];

      const double prod_q = qmj * qpj;
      const bool q_opp = prod_q < 0.0;
      const double sum_q = qmj + qpj;
      const double q_sign = q_opp ? 0.0 : (sum_q > 0.0 ? 1.0 : (sum_q < 0.0 ? -1.0 : 0.0));
      const double prod_p = pmj * ppj;
      const bool p_opp = prod_p < 0.0;
      const double sum_p = pmj + ppj;
      const double p_sign = p_opp ? 0.0 : (sum_p > 0.0 ? 1.0 : (sum_p < 0.0 ? -1.0 : 0.0));

      const double cq = cj * q_sign;
      const double p_sel =
          q_opp ? 0.5 * (pmj + ppj) : (cq > 0.0 ? pmj : (cq < 0.0 ? ppj : 0.5 * (pmj + ppj)));
      const double cp = cj * p_sign;
      const double q_sel =
          p_opp ? 0.5 * (qmj + qpj) : (cp > 0.0 ? qmj : (cp < 0.0 ? qpj : 0.5 * (qmj + qpj)));

      const double den2 = p_sel * p_sel + q_sel * q_sel;
      const double central = den2 > 0.0 ? cj * p_sel * q_sel / std::sqrt(den2) : 0.0;
      const double cbar_p = q_opp ? std::abs(cj) : 0.0;
      const double cbar_q = p_opp ? std::abs(cj) : 0.0;
      h += central - cbar_p * (0.5 * (ppj - pmj)) - cbar_q * (0.5 * (qpj - qmj));
    }
    h_out[j] = h;
  }

  // The a and b sub-terms vanish identically for the cellular flow family
  // (du/dx = dv/dy = 0); they only contribute for synthetic inputs.
  if (strain_enabled && (a != 0.0 || b != 0.0)) {
    for (int j = 0; j < n; ++j) {
      h_out[j] += osher_sethian_s1(pm[j], pp[j], qm[j], qp[j], a) +
                  osher_sethian_s2(pm[j], pp[j], qm[j], qp[j], b);
    }
  }
}

HamiltonianValue assemble(const HamiltonianInputs& in) {
  const OneSidedGradients& g = in.grads;
  const FlowSample& f = in.flow;
  const StrainCoefficients sc =
      in.strain_enabled ? strain_coefficients(f, in.markstein) : StrainCoefficients{};

  HamiltonianValue out;
  assemble_row(1, &g.p_minus, &g.p_plus, &g.q_minus, &g.q_plus, &f.u, f.v, in.laminar_speed,
               in.strain_enabled, sc.a, sc.b, &sc.c, &out.value);

  const double strain_bound =
      in.strain_enabled ? std::abs(sc.a) + std::abs(sc.b) + 2.0 * std::abs(sc.c) : 0.0;
  out.bound_x = std::abs(f.u) + in.laminar_speed + strain_bound;
  out.bound_y = std::abs(f.v) + in.laminar_speed + strain_bound;
  return out;
}

}  // namespace gfront
