/* Dixonian elliptic functions sm/cm (parametrizing X^3 + Y^3 = 1), their
 * order-6 companions sp/cp, the period constants pi3 and Pi, and the
 * level-4 Laurent pair p/q.
 *
 *   sm(0)=0, cm(0)=1, sm^3+cm^3 = 1, sm' = cm^2, cm' = -sm^2,
 *   periods Z pi3 + Z pi3 w  (w = e^{2 pi i/3}),
 *   sp = -sm^2/cm, cp = cm^2/sm,  sp cp (sp - cp) = 1.
 *
 * Evaluation reduces the argument to the Voronoi cell of the one-third
 * lattice {(a + b w) pi3/3} (radius <= pi3/(3 sqrt 3) ~ 1.0201), applies one
 * of nine exact translation identities, and sums the Taylor series whose
 * exact rational coefficients come from the ODE pair.
 */
#pragma once

#include "proflow/cnum.hpp"
#include "proflow/rational.hpp"

#include <utility>
#include <vector>

namespace proflow {

CNum pi3();       // 5.299916250856...
CNum Pi_const();  // pi3^3/27 = 5.513701576710...

// Coordinates of u in the fundamental parallelogram: u = pi3 s + pi3 w t,
// s, t reduced to [0, 1).
struct LatticeCoord {
    double s;
    double t;
};
LatticeCoord to_lattice(std::complex<double> u);

// (sm u, cm u); poles (q_{2,0}, q_{1,1}, q_{0,2} mod lattice) return the
// infinity flag when the reduced argument is within 1e-8 of the pole.
std::pair<CNum, CNum> sm_cm(CNum u);

// sp = -sm^2/cm, cp = cm^2/sm with infinity flags at zeros of cm / sm.
std::pair<CNum, CNum> sp_cp(CNum u);

// Max residual between direct evaluation at u+v and the addition formula
// assembled from values at u and v.
double addition_check_sm(CNum u, CNum v);
double addition_check_sp(CNum u, CNum v);

struct DixonHyperResidual {
    double cm_res;  // |cm(x^{1/3}(x-1)^{1/3} W(x)) - (1-x)^{-1/3}|
    double sm_res;  // |sm^3(same) - (-x)/(1-x)|  (cube form is branch-free)
};
DixonHyperResidual dixon_hyper_relation(double x);

// Coefficients of q(u) = sum_{k>=0} q_k u^{4k-1} (Laurent, q_0 = 1) and
// p(u) = sum_{k>=1} p_k u^{4k-1} (p_1 = 1, so p = u^3 + ...), determined by
// p' = -p^2 + 3pq, q' = -q^2 + 3pq, 1 = p q (p-q)^2.  Throws if the system
// ever becomes inconsistent.
std::pair<std::vector<Rational>, std::vector<Rational>> pq_series(int n);

}  // namespace proflow
