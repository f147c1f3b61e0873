/* Exact algebraic verdicts: quotient-ring identities for the avatar
 * functions, invariance of vector fields under finite matrix groups,
 * pre-quasi-flow conditions, the level criterion for rational flows, and
 * the integer (B, C) pair enumeration.
 *
 * A QuotientCheck certifies numerator(lhs) = certificate * modulus, with
 * the denominator staying outside the principal ideal, so every verdict is
 * independently re-checkable by a single multiplication.
 */
#pragma once

#include "proflow/multipoly.hpp"
#include "proflow/rationalfn.hpp"
#include "proflow/series.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace proflow {

struct QuotientCheck {
    std::string name;
    RationalFn lhs;           // raw combination, denominators not cleared
    MultiPoly modulus;
    bool plain_zero = false;  // numerator vanishes before any reduction
    bool verdict = false;
    MultiPoly certificate;    // numerator = certificate * modulus
};

// Fold terms over a common denominator without GCD reduction.
RationalFn unreduced_sum(const std::vector<RationalFn>& terms);

// The generic engine: exact divisibility of the lhs numerator by the
// modulus, with the denominator required to stay outside the ideal.
QuotientCheck check_quotient(std::string name, const RationalFn& lhs,
                             const MultiPoly& modulus);

// R(A,B;x,y) + R(A,B;-y,x-y) + R(A,B;y-x,-x)   mod A^3 xy(x-y) + B^3 - 1
QuotientCheck symm_identity_1();
// R(A,B;x,y) + R(A/B,1/B;-x,y-x)               mod A^3 xy(x-y) + B^3 - 1
QuotientCheck symm_identity_2();
// T_A(A^2-2AB) + T_B(B^2-2AB) + T_x(x^2-2xy) + T_y(y^2-2xy): not a plain
// identity (plain_zero = false and not divisible-free), but the numerator
// is divisible by AB(A-B) - xy(x-y).
QuotientCheck quaq_check();
// With G = T(1,B;x,y):  G_B(3B^2-3B) + G_x(x^2-2xy-x+2Bx)
//   + G_y(y^2-2xy-y+2By) - (2B-1) G              mod B(1-B) - xy(x-y)
QuotientCheck tfun_check();
// Radical-cleared form of
//   [E_x(x^2-2xy) + E_y(y^2-2xy)] / [E - x E_x - y E_y] = sqrt(1-4xy(x-y)):
// verifies N^2 - (1-4xy(x-y)) D^2 = 0            mod B(1-B) - xy(x-y).
QuotientCheck sqrt_identity_check();

// The five checks above, in a fixed order.
std::vector<QuotientCheck> all_quotient_checks();

// ---- superflow invariance ---------------------------------------------

using RatMatrix = std::vector<std::vector<Rational>>;

struct GroupRep {
    std::vector<RatMatrix> generators;  // square, invertible
    int dimension = 0;
};

RatMatrix mat_identity(int n);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
RatMatrix mat_inverse(const RatMatrix& m);  // throws on singular input

// Q1 = x1^2 - 2/(N-1) x1 (x2 + ... + xN) and its coordinate swaps;
// variables are named x,y for N = 2 and x,y,z for N = 3, x1..xN beyond.
// Throws std::invalid_argument for N < 2.
std::vector<MultiPoly> superflow_Q1(int N);

// gamma^{-1} o Q o gamma = Q symbolically for every generator (hence for
// the generated group).  Throws on a dimension mismatch.
bool superflow_invariance(const std::vector<RationalFn>& Q,
                          const GroupRep& G);

// Redundancy check: invariance under `words` random generator products of
// the given length.
bool superflow_invariance_words(const std::vector<RationalFn>& Q,
                                const GroupRep& G, int words, int length,
                                unsigned seed);

GroupRep six_fold_group();      // <sigma, tau>: the 6-element S3 in GL_2
GroupRep a4_pelican_group();    // Klein diagonals + an order-3 rotation
GroupRep sigma4_prime_group();  // cube-rotation images of (12), (13), (14)

std::vector<RationalFn> pelican_field();       // (yz, xz, xy)
std::vector<RationalFn> sigma4_prime_field();  // (y^3z-yz^3)/(x^2+y^2+z^2), ..
bool sigma4prime_field_check();

// ---- quasi-flows -------------------------------------------------------

struct QuasiFlowData {
    RationalFn U;     // candidate, variables (A, B, x, y)
    RationalFn w, r;  // 2-homogenic vector field components in (x, y)
    MultiPoly P, Q;   // orbit data W = P/Q, variables (x, y)
};

// U_A w(A,B) + U_B r(A,B) + U_x w(x,y) + U_y r(x,y)
//   mod P(A,B) Q(x,y) - P(x,y) Q(A,B);
// the verdict additionally requires U to be 1-homogenic.  Throws when the
// modulus collapses to zero.
QuotientCheck quasi_flow_pre_check(const QuasiFlowData& d);

QuasiFlowData phi_n_quasi_U(int N);      // U = -A(y-B)^{N-1}/y^{N-1}
QuasiFlowData phi_n_quasi_U_hat(int N);  // U-hat = x(B-y)^{N-1}/B^{N-1}
QuasiFlowData phi_n_quasi_V(int N);      // V = yB/(B-y)
QuasiFlowData e_flow_quasi_U();          // U = (x^2-y^2)/(B-A) + (x+y)/2

// Level criterion: (y w_y - x r_y)/(y w_x - x r_x) must reduce to a ratio
// of linear forms (ax+by)/(cx+dy) with a != d and ((a+d)^2 - 4bc)/(a-d)^2
// the square of a positive integer M; returns M (the level) or empty.
std::optional<int> rational_flow_criterion(const VectorField2& vf);

// All integer pairs with B, C not in {0, 1}, B + C != 2 and
// BC - 1 | B + C - 2, scanned over |B|, |C| <= bound (>= 6, else throws).
// The scan re-verifies that every admissible pair has |B|, |C| <= 5 and
// fails loudly otherwise.
std::vector<std::pair<long, long>> bc_pairs_enumerate(long bound);

}  // namespace proflow
