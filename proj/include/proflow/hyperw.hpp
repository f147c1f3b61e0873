/* The hypergeometric function W(x) = 2F1(2/3, 1; 4/3; x) and its Kummer
 * companions.
 *
 *   W(x) = (1/3) Int_0^1 dt / [(1-t)(1-xt)]^{2/3},   W(0) = 1,
 *   3x(1-x) W' + (1-2x) W = 1,
 *   Pfaff:  W(x) = 1/(1-x) * W(x/(x-1)).
 *
 * Evaluation: Taylor series a_{n+1} = a_n (3n+2)/(3n+4) inside the unit
 * disk, Pfaff transformation elsewhere (covers all real x < 1 and the
 * complex plane off the region where both |x| >= 1 and Re x >= 1/2).
 */
#pragma once

#include "proflow/cnum.hpp"

namespace proflow {

enum class KummerBranch { Zero, One, Infinity };

CNum hyper_W(CNum x);

// W0 = W; W1(x) = -W(1-x); Winf(x) = (1/x) W(1/x).
CNum kummer_solution(KummerBranch which, CNum x);

// Residual of 3x(1-x)W' + (1-2x)W - 1 with W' by central difference.
double w_ode_residual(double x, double h = 1e-5);

// Adaptive Simpson evaluation of the defining integral (real x < 1),
// via the substitution u = (1-t)^{1/3} which removes the endpoint
// singularity:  W(x) = Int_0^1 du / (1 - x + x u^3)^{2/3}.
double hyper_W_integral(double x, double tol = 1e-11);

}  // namespace proflow
