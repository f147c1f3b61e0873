/* The algebraic avatars of the level-3 flow as exact rational functions in
 * the variables (A, B, x, y), shared between the numeric evaluators and the
 * symbolic quotient-ring proofs.
 *
 * R: substitute A = sm(v)/v, B = cm(v), v^3 = xy(x-y) to recover the flow;
 *    the pair (A, B) lives on A^3 xy(x-y) + B^3 = 1.
 * T: substitute A = sp(v) v, B = cp(v) v; the pair satisfies
 *    AB(A-B) = xy(x-y).
 */
#pragma once

#include "proflow/rationalfn.hpp"

namespace proflow {

// Variable universe {"A", "B", "x", "y"} used by both avatars.
const std::vector<std::string>& abxy_vars();

// R(A,B;x,y) = x(x-y)(B - AB^2 y + A^2 xy)^2 / [(x - B^3 y)(B^2 - Ax + A^2 Bxy)]
const RationalFn& R_expr();

// T(A,B;x,y) = [x(x-y) + AB - Ax]^2 y(x-y)
//              / (A [B(x-y) - Ax][AB + x(x-y) - B(x-y)])
const RationalFn& T_expr();

// Relation ideals (principal) the avatar arguments live on.
const MultiPoly& R_ideal();  // A^3 xy(x-y) + B^3 - 1
const MultiPoly& T_ideal();  // AB(A-B) - xy(x-y)

// T specialized at A = 1, in variables {"B","x","y"}, with its relation
// B(1-B) - xy(x-y).
const RationalFn& T1_expr();
const MultiPoly& E_ideal();

}  // namespace proflow
