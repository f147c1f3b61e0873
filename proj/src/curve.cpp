#include "proflow/curve.hpp"

#include "proflow/dixon.hpp"
#include "proflow/flows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace proflow {

namespace {

using Cplx = std::complex<double>;

constexpr double kDegenerateTol = 1e-12;

double point_scale(const ProjPoint& P) {
    return std::max({std::abs(P.X), std::abs(P.Y), std::abs(P.Z)});
}

ProjPoint point_O() { return {Cplx(1.0), Cplx(1.0), Cplx(0.0)}; }
ProjPoint point_Q3() { return {Cplx(0.0), Cplx(1.0), Cplx(0.0)}; }
ProjPoint point_2Q3() { return {Cplx(1.0), Cplx(0.0), Cplx(0.0)}; }

void require_on_curve(const CurveE& E, const ProjPoint& P, const char* who) {
    if (!E.contains(P)) {
        throw std::invalid_argument(std::string(who) +
                                    ": point is not on the curve");
    }
}

bool is_finite_point(const ProjPoint& P) {
    return std::abs(P.Z) > kDegenerateTol * point_scale(P);
}

// Chord-and-tangent on q^2 = 4 p^3 + c^2 (affine r = 1); the only point at
// infinity of this model is (0:-1:0), the image of O.
ProjPoint weierstrass_add(const CurveE& E, const ProjPoint& P1,
                          const ProjPoint& P2) {
    const WeierstrassPoint W1 = weierstrass_map(E, P1);
    const WeierstrassPoint W2 = weierstrass_map(E, P2);
    const double s1 = std::max({std::abs(W1.p), std::abs(W1.q), std::abs(W1.r)});
    const double s2 = std::max({std::abs(W2.p), std::abs(W2.q), std::abs(W2.r)});
    if (std::abs(W1.r) <= kDegenerateTol * s1) return normalized(P2);
    if (std::abs(W2.r) <= kDegenerateTol * s2) return normalized(P1);

    const Cplx x1 = W1.p / W1.r, y1 = W1.q / W1.r;
    const Cplx x2 = W2.p / W2.r, y2 = W2.q / W2.r;
    const double xscale = std::max({1.0, std::abs(x1), std::abs(x2)});
    Cplx m;
    if (std::abs(x1 - x2) <= 1e-9 * xscale) {
        const double yscale = std::max({1.0, std::abs(y1), std::abs(y2)});
        if (std::abs(y1 + y2) <= 1e-9 * yscale) return point_O();
        m = 6.0 * x1 * x1 / y1;  // tangent slope of q^2 = 4p^3 + c^2
    } else {
        m = (y2 - y1) / (x2 - x1);
    }
    const Cplx x3 = m * m / 4.0 - x1 - x2;
    const Cplx y3 = -(y1 + m * (x3 - x1));
    return normalized(weierstrass_inverse(E, {x3, y3, Cplx(1.0)}));
}

}  // namespace

ProjPoint normalized(const ProjPoint& P) {
    const double s = point_scale(P);
    if (s <= 0.0) throw std::invalid_argument("normalized: zero point");
    return {P.X / s, P.Y / s, P.Z / s};
}

bool points_equal(const ProjPoint& P, const ProjPoint& Q, double tol) {
    const ProjPoint A = normalized(P);
    const ProjPoint B = normalized(Q);
    const double c1 = std::abs(A.X * B.Y - A.Y * B.X);
    const double c2 = std::abs(A.X * B.Z - A.Z * B.X);
    const double c3 = std::abs(A.Y * B.Z - A.Z * B.Y);
    return c1 <= tol && c2 <= tol && c3 <= tol;
}

CurveE::CurveE(std::complex<double> c) : c_(c) {
    if (std::abs(c) == 0.0) {
        throw std::invalid_argument("CurveE: c = 0 gives a singular cubic");
    }
    cbrt_c_ = std::pow(c, 1.0 / 3.0);
}

bool CurveE::contains(const ProjPoint& P, double tol) const {
    const ProjPoint N = normalized(P);
    const Cplx residual = N.X * N.Y * (N.X - N.Y) - c_ * N.Z * N.Z * N.Z;
    return std::abs(residual) <= tol * std::max(1.0, std::abs(c_));
}

ProjPoint ec_neg(const ProjPoint& P) { return {-P.Y, -P.X, P.Z}; }

ProjPoint ec_add(const CurveE& E, const ProjPoint& P1, const ProjPoint& P2) {
    require_on_curve(E, P1, "ec_add");
    require_on_curve(E, P2, "ec_add");
    const ProjPoint N1 = normalized(P1);
    const ProjPoint N2 = normalized(P2);
    if (points_equal(N1, N2)) return ec_double(E, N1);
    if (points_equal(N1, point_O())) return N2;
    if (points_equal(N2, point_O())) return N1;

    if (is_finite_point(N1) && is_finite_point(N2)) {
        const Cplx x1 = N1.X / N1.Z, y1 = N1.Y / N1.Z;
        const Cplx x2 = N2.X / N2.Z, y2 = N2.Y / N2.Z;
        const Cplx dx = x1 - x2, dy = y1 - y2;
        const Cplx X3 = dy * dy * dy * x1 * x2;
        const Cplx Y3 = dx * dx * dx * y1 * y2;
        const Cplx Z3 = dx * dy * (x1 * y1 - x2 * y2);
        const ProjPoint R{X3, Y3, Z3};
        const double s = point_scale(R);
        if (s > 1e-300 && std::abs(Z3) >= kDegenerateTol * s) {
            return normalized(R);
        }
    }
    // Points at infinity, annihilating pairs, and underflowing Z3 all land
    // here; the Weierstrass model has a single point at infinity and its
    // chord law covers every remaining configuration.
    return weierstrass_add(E, N1, N2);
}

ProjPoint ec_add_raw(const CurveE& E, const ProjPoint& P1,
                     const ProjPoint& P2) {
    require_on_curve(E, P1, "ec_add_raw");
    require_on_curve(E, P2, "ec_add_raw");
    const ProjPoint N1 = normalized(P1);
    const ProjPoint N2 = normalized(P2);
    if (!is_finite_point(N1) || !is_finite_point(N2)) {
        throw std::invalid_argument("ec_add_raw: finite points required");
    }
    const Cplx x1 = N1.X / N1.Z, y1 = N1.Y / N1.Z;
    const Cplx x2 = N2.X / N2.Z, y2 = N2.Y / N2.Z;
    const Cplx dx = x1 - x2, dy = y1 - y2;
    const Cplx X3 = (x1 * (x1 - y1) - x2 * (x2 - y2)) * dy * dy;
    const Cplx Y3 = (y1 * (x1 - y1) - y2 * (x2 - y2)) * dx * dx;
    const Cplx Z3 = dx * dy * (x1 - y1 + y2 - x2);
    return normalized(ProjPoint{X3, Y3, Z3});
}

ProjPoint ec_double(const CurveE& E, const ProjPoint& P) {
    require_on_curve(E, P, "ec_double");
    const ProjPoint N = normalized(P);
    if (!is_finite_point(N)) {
        if (points_equal(N, point_O())) return point_O();
        if (points_equal(N, point_Q3())) return point_2Q3();
        return point_Q3();  // 2 * (2Q3) = 4Q3 = Q3
    }
    const Cplx x = N.X / N.Z, y = N.Y / N.Z;
    const Cplx a = 2.0 * x - y, b = 2.0 * y - x;
    const ProjPoint R{a * a * a * y, b * b * b * x, (x + y) * a * b};
    const double s = point_scale(R);
    if (s <= 1e-300) {
        // 2P = O exactly when P is 2-torsion; the formula collapses only
        // with it.
        return point_O();
    }
    return normalized(R);
}

ProjPoint ec_scalar_mul(const CurveE& E, long n, const ProjPoint& P) {
    require_on_curve(E, P, "ec_scalar_mul");
    if (n == 0) return point_O();
    ProjPoint base = normalized(P);
    if (n < 0) {
        base = ec_neg(base);
        n = -n;
    }
    ProjPoint acc = point_O();
    while (n > 0) {
        if (n & 1) acc = ec_add(E, acc, base);
        n >>= 1;
        if (n > 0) base = ec_double(E, base);
    }
    return acc;
}

std::vector<TorsionEntry> torsion_table(const CurveE& E) {
    const Cplx s = E.cbrt_c();
    const Cplx a = s / std::cbrt(2.0);   // (c/2)^{1/3}
    const Cplx b = s * std::cbrt(4.0);   // (4c)^{1/3}
    const Cplx one(1.0);
    return {
        {"O", 1, point_O()},
        {"Q2", 2, {-a, a, one}},
        {"Q3", 3, point_Q3()},
        {"2Q3", 3, point_2Q3()},
        {"Q6", 6, {-a, -b, one}},
        {"5Q6", 6, {b, a, one}},
    };
}

bool c12_relations(const CurveE& E) {
    const Cplx s = E.cbrt_c();
    const Cplx a = s / std::cbrt(2.0);
    const Cplx b = s * std::cbrt(4.0);
    const Cplx w = omega_root();
    const Cplx w2 = w * w;
    const Cplx one(1.0);
    const ProjPoint Q6{-a, -b, one};
    const ProjPoint Q6w{-w * a, -w * b, one};
    const ProjPoint Q6w2{-w2 * a, -w2 * b, one};
    const ProjPoint Q2w{-w * a, w * a, one};
    const ProjPoint Q2w2{-w2 * a, w2 * a, one};

    const ProjPoint sum3 = ec_add(E, ec_add(E, Q6, Q6w), Q6w2);
    if (!points_equal(sum3, point_O())) return false;
    if (!points_equal(ec_add(E, Q6, ec_neg(Q6w)), Q2w2)) return false;
    if (!points_equal(ec_add(E, Q6, ec_neg(Q6w2)), Q2w)) return false;
    return true;
}

WeierstrassPoint weierstrass_map(const CurveE& E, const ProjPoint& P) {
    require_on_curve(E, P, "weierstrass_map");
    const ProjPoint N = normalized(P);
    return {N.Z / 2.0, -(N.X + N.Y) / 2.0, (N.X - N.Y) / (2.0 * E.c())};
}

ProjPoint weierstrass_inverse(const CurveE& E, const WeierstrassPoint& W) {
    const Cplx cr = E.c() * W.r;
    return {cr - W.q, -cr - W.q, 2.0 * W.p};
}

LambdaInfinity lambda_at_infinity(const CurveE& E) {
    const Cplx s = E.cbrt_c();
    const auto [sm, cm] = sm_cm(CNum(s));
    if (sm.inf || cm.inf) {
        throw std::domain_error("lambda_at_infinity: pole at cbrt(c)");
    }
    const Cplx A = sm.v / s;
    const Cplx B = cm.v;
    const Cplx one(1.0);
    if (std::abs(A) < 1e-10) {
        return {point_O(), point_Q3(), point_2Q3()};
    }
    if (std::abs(B) < 1e-10) {
        return {point_2Q3(), point_O(), point_Q3()};
    }
    const Cplx c = E.c();
    return {
        {one / (A * B), B * B / A, one},
        {-c * A * A / B, -one / (A * B), one},
        {-B * B / A, c * A * A / B, one},
    };
}

double translation_q3_check(const CurveE& E, const ProjPoint& P) {
    require_on_curve(E, P, "translation_q3_check");
    const ProjPoint N = normalized(P);
    if (!is_finite_point(N)) {
        throw std::invalid_argument("translation_q3_check: finite P required");
    }
    const Cplx x = N.X / N.Z, y = N.Y / N.Z;

    const CNum lx = lambda_eval(CNum(x), CNum(y));
    const CNum ly = lambda_eval(CNum(y), CNum(x));
    if (lx.inf || ly.inf) {
        throw std::domain_error("translation_q3_check: flow pole at P");
    }
    const ProjPoint lambdaP{lx.v, ly.v, Cplx(1.0)};

    const ProjPoint PQ = ec_add(E, N, point_Q3());
    const Cplx xq = PQ.X / PQ.Z, yq = PQ.Y / PQ.Z;
    const CNum lxq = lambda_eval(CNum(xq), CNum(yq));
    const CNum lyq = lambda_eval(CNum(yq), CNum(xq));
    if (lxq.inf || lyq.inf) {
        throw std::domain_error("translation_q3_check: flow pole at P + Q3");
    }

    const ProjPoint rhs = ec_add(E, lambdaP, point_Q3());
    const Cplx rx = rhs.X / rhs.Z, ry = rhs.Y / rhs.Z;
    return std::max(std::abs(lxq.v - rx), std::abs(lyq.v - ry));
}

ProjPoint curve_point_from_flow(std::complex<double> x, std::complex<double> y,
                                std::complex<double> z) {
    if (std::abs(z) == 0.0) {
        throw std::invalid_argument("curve_point_from_flow: z = 0");
    }
    const CNum u = lambda_eval(CNum(x * z), CNum(y * z));
    const CNum v = lambda_eval(CNum(y * z), CNum(x * z));
    if (u.inf || v.inf) {
        throw std::domain_error("curve_point_from_flow: flow pole");
    }
    return {u.v / z, v.v / z, Cplx(1.0)};
}

}  // namespace proflow
