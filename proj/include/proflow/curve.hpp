/* Group arithmetic on the projective cubic E(c): X Y (X - Y) = c Z^3, c != 0.
 *
 * The curve carries an explicit chord-and-tangent law with identity
 * O = (1:1:0) and negation -(X:Y:Z) = (-Y:-X:Z).  Generic sums use the
 * polynomial addition formulas native to this model; degenerate
 * configurations are routed through the birationally equivalent Weierstrass
 * curve q^2 r = 4 p^3 + c^2 r^3 and mapped back.  The six-point torsion
 * catalogue, its omega-twisted extension to a 12-element group, and the
 * action of the level-3 flow on the three points at infinity are provided
 * alongside.
 */
#pragma once

#include "proflow/cnum.hpp"

#include <complex>
#include <string>
#include <vector>

namespace proflow {

struct ProjPoint {
    std::complex<double> X{0.0}, Y{0.0}, Z{0.0};
};

// Scale so the largest-magnitude coordinate has modulus 1.
ProjPoint normalized(const ProjPoint& P);

// Projective equality: all cross products vanish within tol * scale.
bool points_equal(const ProjPoint& P, const ProjPoint& Q, double tol = 1e-9);

class CurveE {
public:
    explicit CurveE(std::complex<double> c);  // throws on c = 0

    std::complex<double> c() const { return c_; }
    // The cube root of c fixed for this curve instance (principal).
    std::complex<double> cbrt_c() const { return cbrt_c_; }

    // |XY(X-Y) - cZ^3| <= tol * scale^3 * max(1, |c|) after normalization.
    bool contains(const ProjPoint& P, double tol = 1e-9) const;

private:
    std::complex<double> c_;
    std::complex<double> cbrt_c_;
};

ProjPoint ec_neg(const ProjPoint& P);

// Chord-and-tangent sum.  Generic case:
//   X3 = (Y1-Y2)^3 X1 X2,  Y3 = (X1-X2)^3 Y1 Y2,
//   Z3 = (X1-X2)(Y1-Y2)(X1 Y1 - X2 Y2);
// equal points dispatch to ec_double, and configurations where the generic
// Z3 underflows are recomputed through the Weierstrass model.  Off-curve
// inputs throw std::invalid_argument.
ProjPoint ec_add(const CurveE& E, const ProjPoint& P1, const ProjPoint& P2);

// The same sum through the pre-simplification polynomials
//   X3 = (X1(X1-Y1) - X2(X2-Y2))(Y1-Y2)^2, ...
// Exposed for cross-checking against ec_add; finite generic inputs only.
ProjPoint ec_add_raw(const CurveE& E, const ProjPoint& P1,
                     const ProjPoint& P2);

// 2P = ((2X-Y)^3 Y : (2Y-X)^3 X : (X+Y)(2X-Y)(2Y-X)) for finite P; the
// three points at infinity double among themselves.  Off-curve inputs throw.
ProjPoint ec_double(const CurveE& E, const ProjPoint& P);

ProjPoint ec_scalar_mul(const CurveE& E, long n, const ProjPoint& P);

struct TorsionEntry {
    std::string name;
    int order = 0;
    ProjPoint point;
};

// O, Q2, Q3, 2Q3, Q6, 5Q6 with coordinates built from the curve's fixed
// cube root:
//   O    = (1:1:0)                                order 1
//   Q2   = (-(c/2)^{1/3} :  (c/2)^{1/3} : 1)      order 2
//   Q3   = (0:1:0)                                order 3
//   2Q3  = (1:0:0)                                order 3
//   Q6   = (-(c/2)^{1/3} : -(4c)^{1/3} : 1)       order 6
//   5Q6  = ( (4c)^{1/3}  :  (c/2)^{1/3} : 1)      order 6
std::vector<TorsionEntry> torsion_table(const CurveE& E);

// The omega-twisted six-points extend C6 to a group of order 12; verifies
//   Q6 + Q6^w + Q6^{w^2} = O,
//   Q6 - Q6^w        = Q2^{w^2},
//   Q6 - Q6^{w^2}    = Q2^w
// with the twisted coordinates Q6^w = (-w (c/2)^{1/3} : -w (4c)^{1/3} : 1),
// Q2^w = (-w (c/2)^{1/3} : w (c/2)^{1/3} : 1), w = e^{2 pi i/3}.
bool c12_relations(const CurveE& E);

struct WeierstrassPoint {
    std::complex<double> p{0.0}, q{0.0}, r{0.0};
};

// (X:Y:Z) -> (p:q:r) = (Z/2 : -(X+Y)/2 : (X-Y)/(2c)), which lands on
// q^2 r = 4 p^3 + c^2 r^3; inverse (p:q:r) -> (cr-q : -cr-q : 2p).
// Off-curve inputs throw std::invalid_argument.
WeierstrassPoint weierstrass_map(const CurveE& E, const ProjPoint& P);
ProjPoint weierstrass_inverse(const CurveE& E, const WeierstrassPoint& W);

struct LambdaInfinity {
    ProjPoint at_O;    // image of O   = (1:1:0)
    ProjPoint at_Q3;   // image of Q3  = (0:1:0)
    ProjPoint at_2Q3;  // image of 2Q3 = (1:0:0)
};

// Action of the unit-time level-3 flow on the three points at infinity,
// through A = sm(s)/s, B = cm(s), s = cbrt_c (so A^3 c + B^3 = 1):
//   generic:  (1/(AB), B^2/A), (-cA^2/B, -1/(AB)), (-B^2/A, cA^2/B)
//   A = 0:    all three points are fixed
//   B = 0:    O -> 2Q3 -> Q3 -> O  (a 3-cycle)
LambdaInfinity lambda_at_infinity(const CurveE& E);

// | Lambda(P + Q3) - (Lambda(P) + Q3) | in affine coordinates after
// normalizing both sides to Z = 1.  P must be finite and on E; throws
// std::invalid_argument otherwise and std::domain_error where the flow is
// undefined at P.
double translation_q3_check(const CurveE& E, const ProjPoint& P);

// On-curve sampling along the flow orbit through (x, y):
// (lambda(xz,yz)/z : lambda(yz,xz)/z : 1) lies on E(xy(x-y)) for any
// admissible z != 0.  Throws std::domain_error at flow poles.
ProjPoint curve_point_from_flow(std::complex<double> x,
                                std::complex<double> y,
                                std::complex<double> z);

}  // namespace proflow
