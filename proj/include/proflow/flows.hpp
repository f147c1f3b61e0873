/* Closed-form evaluators for the canonic projective flows and the algebraic
 * avatars of the level-3 flow.
 *
 * Catalogue (u(x,y) . v(x,y), all satisfying (1-z) u(x,y) =
 * u(u(xz,yz)(1-z)/z, v(xz,yz)(1-z)/z) and its v-companion):
 *
 *   identity   x . y
 *   phi_N      x(y+1)^{N-1} . y/(y+1)
 *   exp        x e^y . y
 *   tan        (xy + y^2 tan y)/(y - x tan y) . y
 *   log        xy/((y+1)(y + x log(y+1))) . y/(y+1)      (principal log)
 *   e          ((x-y)e^{x+y} + x+y)/2 . ((y-x)e^{x+y} + x+y)/2
 *   t          with d = x-y:  d(x - y tan d)/(d - (x+y) tan d) . (same, x<->y)
 *   Lambda     lambda(x,y) . lambda(y,x)                  (level 3)
 */
#pragma once

#include "proflow/cnum.hpp"

#include <string>
#include <utility>

namespace proflow {

struct FlowKind {
    enum class Tag { Identity, PhiN, Exp, Tan, Log, E, T, Lambda };
    Tag tag = Tag::Identity;
    int n = 0;  // level parameter, PhiN only

    static FlowKind identity() { return {Tag::Identity, 0}; }
    static FlowKind phi_n(int n) { return {Tag::PhiN, n}; }
    static FlowKind exp_flow() { return {Tag::Exp, 0}; }
    static FlowKind tan_flow() { return {Tag::Tan, 0}; }
    static FlowKind log_flow() { return {Tag::Log, 0}; }
    static FlowKind e_flow() { return {Tag::E, 0}; }
    static FlowKind t_flow() { return {Tag::T, 0}; }
    static FlowKind lambda_flow() { return {Tag::Lambda, 0}; }

    std::string name() const;
    // Parse "identity", "phi_3", "exp", "tan", "log", "e", "t", "Lambda".
    static FlowKind parse(const std::string& text);
};

struct FlowValue {
    CNum u;
    CNum v;
    bool defined = true;
};

FlowValue classical_flow_eval(FlowKind kind, CNum x, CNum y);

// The level-3 flow through sm/cm of the cube root of xy(x-y); the result is
// independent of which root (branch in {0,1,2} rotates it, for testing).
// Points within relative distance 1e-12 of the removable locus
// {x=0} u {y=0} u {x=y} take the limit values lambda(0,y) = 0,
// lambda(x,0) = x/(1-x), lambda(x,x) = x/(1+x); up to relative distance
// 1e-7 both routes are evaluated and must agree.
CNum lambda_eval(CNum x, CNum y, int branch = 0);
std::pair<CNum, CNum> lambda_pair(CNum x, CNum y);

// Restricted avatar: R(A,B;x,y); infinity flag on a vanishing denominator.
CNum R_eval(CNum A, CNum B, CNum x, CNum y);

// Projected avatar: T(A,B;x,y); throws at A = 0 (pole of the avatar).
CNum T_eval(CNum A, CNum B, CNum x, CNum y);

// Algebraic avatar E(x,y) = T(1, B; x, y), B = 1/2 + sqrt(1 - 4xy(x-y))/2
// (principal); throws at the branch points 1 - 4xy(x-y) = 0.
CNum E_eval(CNum x, CNum y);

// Residual of conjugation: the exp flow transported through
// l(x,y) = x(x+y)/y . (x+y) against its printed closed form.
double ell_conjugation_check(CNum x, CNum y);

// |lambda(x W(x), W(x))| -- the flow vanishes along that curve.
double c0_vanishing(double x);

}  // namespace proflow
