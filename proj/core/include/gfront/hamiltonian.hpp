#pragma once

#include "gfront/flow.hpp"
#include "gfront/weno.hpp"

namespace gfront {

struct HamiltonianInputs {
  OneSidedGradients grads;
  FlowSample flow;
  double laminar_speed = 1.0;  // s_L > 0
  double markstein = 0.0;      // d_M >= 0
  bool strain_enabled = false;
};

struct HamiltonianValue {
  double value = 0.0;
  double bound_x = 0.0;  // local |dH/dp| bound feeding the CFL condition
  double bound_y = 0.0;  // local |dH/dq| bound
};

/// s_L * sqrt(p_lem^2 + q_lem^2) with the Godunov selection
/// p_lem^2 = max(max(p-,0)^2, min(p+,0)^2), q analogous.
double godunov_laminar(double pm, double pp, double qm, double qp, double laminar_speed);

/// u*p_sel + v*q_sel, upwind-selected; the zero-velocity branch averages
/// (the term is multiplied by zero either way).
double upwind_advection(double pm, double pp, double qm, double qp, double u, double v);

/// Osher-Sethian split for a*p^2/sqrt(p^2+q^2).
double osher_sethian_s1(double pm, double pp, double qm, double qp, double a);

/// Osher-Sethian split for b*q^2/sqrt(p^2+q^2); mirror of s1 with the roles
/// of p and q exchanged.
double osher_sethian_s2(double pm, double pp, double qm, double qp, double b);

/// Roe selection for c*p*q/sqrt(p^2+q^2), with Lax-Friedrichs diffusion added
/// only where the transverse one-sided pair has strictly opposite signs.
double roe_s3(double pm, double pp, double qm, double qp, double c);

/// Upwind advection + Godunov laminar term + (optionally) the three strain
/// sub-terms. Bounds are the conservative global coefficient magnitudes
/// |u| + s_L + |a| + |b| + 2|c| (and |v| likewise).
HamiltonianValue assemble(const HamiltonianInputs& in);

/// Row-vectorized assembly: H at n nodes sharing one x-line (v, a, b constant
/// along a row for the cellular flow family, u and c varying). assemble()
/// delegates here with n = 1, so the scalar and row paths agree bitwise.
void assemble_row(int n, const double* pm, const double* pp, const double* qm, const double* qp,
                  const double* u, double v, double laminar_speed, bool strain_enabled, double a,
                  double b, const double* c, double* h_out);

}  // namespace gfront
