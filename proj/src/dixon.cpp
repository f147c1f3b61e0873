#include "proflow/dixon.hpp"

#include "proflow/hyperw.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

namespace proflow {
namespace {

using Cplx = std::complex<double>;

// pi3^6 = 8 pi^6 (1 - sum_{n>=1} 504 n^5 / ((-1)^n e^{sqrt3 pi n} - 1)).
// The weights decay like e^{-sqrt3 pi n}; a dozen terms exhaust doubles.
double pi3_impl() {
    const double pi = std::acos(-1.0);
    const double s3pi = std::sqrt(3.0) * pi;
    double sum = 0.0;
    for (int n = 1; n <= 16; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const double den = sign * std::exp(s3pi * n) - 1.0;
        sum += 504.0 * std::pow(double(n), 5.0) / den;
    }
    const double sixth = 8.0 * std::pow(pi, 6.0) * (1.0 - sum);
    return std::pow(sixth, 1.0 / 6.0);
}

const double kPi3 = pi3_impl();

// Taylor coefficients of sm and cm about 0, exact rationals pushed through
// sm' = cm^2, cm' = -sm^2.  Degree 99 keeps the truncation error below
// 1e-20 on the reduction cell (|u| <= pi3/(3 sqrt 3), nearest pole pi3/3).
constexpr int kTaylorDegree = 99;

struct TaylorTables {
    std::vector<double> sm;  // coefficient of u^n
    std::vector<double> cm;
};

TaylorTables build_taylor() {
    std::vector<Rational> s(kTaylorDegree + 1, Rational(0));
    std::vector<Rational> c(kTaylorDegree + 1, Rational(0));
    c[0] = Rational(1);
    for (int n = 0; n < kTaylorDegree; ++n) {
        Rational c2(0), s2(0);
        for (int i = 0; i <= n; ++i) {
            c2 += c[i] * c[n - i];
            s2 += s[i] * s[n - i];
        }
        s[n + 1] = c2 / Rational(n + 1);
        c[n + 1] = -s2 / Rational(n + 1);
    }
    TaylorTables t;
    t.sm.reserve(s.size());
    t.cm.reserve(c.size());
    for (const auto& q : s) t.sm.push_back(q.to_double());
    for (const auto& q : c) t.cm.push_back(q.to_double());
    return t;
}

const TaylorTables& taylor() {
    static const TaylorTables t = build_taylor();
    return t;
}

// sm and cm summed from the tables; |u| must stay well inside the pole
// radius pi3/3.  Horner over the shared power sequence.
std::pair<CNum, CNum> taylor_sm_cm(Cplx u) {
    const auto& t = taylor();
    Cplx pw = 1.0, sm = 0.0, cm = 0.0;
    double abs_acc_s = 0.0, abs_acc_c = 0.0;
    for (int n = 0; n <= kTaylorDegree; ++n) {
        const Cplx ts = t.sm[n] * pw;
        const Cplx tc = t.cm[n] * pw;
        sm += ts;
        cm += tc;
        abs_acc_s += std::abs(ts);
        abs_acc_c += std::abs(tc);
        pw *= u;
    }
    // Truncation: coefficients grow like (3/pi3)^n, so the dropped tail is
    // below (3|u|/pi3)^{deg+1}/(1 - ratio); rounding: accumulated |terms|.
    const double ratio = 3.0 * std::abs(u) / kPi3;
    double tail = 0.0;
    if (ratio < 0.999) tail = std::pow(ratio, kTaylorDegree + 1) / (1.0 - ratio);
    const double ulp = 1e-16;
    return {CNum(sm, abs_acc_s * ulp + tail), CNum(cm, abs_acc_c * ulp + tail)};
}

struct Reduction {
    Cplx delta;  // u - (m + n w) pi3/3, in the Voronoi cell
    int m3;      // m mod 3 in {0,1,2}
    int n3;      // n mod 3 in {0,1,2}
};

Reduction reduce_argument(Cplx u) {
    const Cplx w = omega_root();
    const double unit = kPi3 / 3.0;
    // u = unit (x + y w): y from the imaginary part, x from the real part.
    const double y = 2.0 * u.imag() / (unit * std::sqrt(3.0));
    const double x = u.real() / unit + y / 2.0;
    const long m0 = std::lround(x), n0 = std::lround(y);
    Reduction best{};
    double best_d = -1.0;
    long best_m = 0, best_n = 0;
    for (long dm = -1; dm <= 1; ++dm) {
        for (long dn = -1; dn <= 1; ++dn) {
            const long m = m0 + dm, n = n0 + dn;
            const Cplx q = unit * (Cplx(double(m), 0.0) + double(n) * w);
            const double d = std::abs(u - q);
            if (best_d < 0.0 || d < best_d) {
                best_d = d;
                best.delta = u - q;
                best_m = m;
                best_n = n;
            }
        }
    }
    best.m3 = int(((best_m % 3) + 3) % 3);
    best.n3 = int(((best_n % 3) + 3) % 3);
    return best;
}

CNum cnum_div(CNum a, CNum b) {
    const double bm = std::abs(b.v);
    const Cplx q = a.v / b.v;
    // first-order error transport for a/b
    const double err = (a.err + std::abs(q) * b.err) / bm;
    return CNum(q, err);
}

CNum cnum_mul_scalar(Cplx k, CNum a) { return CNum(k * a.v, std::abs(k) * a.err); }

}  // namespace

CNum pi3() { return CNum(Cplx(kPi3, 0.0), kPi3 * 1e-15); }

CNum Pi_const() {
    const double v = kPi3 * kPi3 * kPi3 / 27.0;
    return CNum(Cplx(v, 0.0), v * 3e-15);
}

LatticeCoord to_lattice(Cplx u) {
    const double y = 2.0 * u.imag() / (kPi3 * std::sqrt(3.0));
    const double x = u.real() / kPi3 + y / 2.0;
    LatticeCoord lc{x - std::floor(x), y - std::floor(y)};
    if (lc.s >= 1.0) lc.s = 0.0;  // guard against floor rounding at 1-eps
    if (lc.t >= 1.0) lc.t = 0.0;
    return lc;
}

std::pair<CNum, CNum> sm_cm(CNum u) {
    if (u.inf) throw std::domain_error("sm_cm: argument at infinity");
    const Reduction red = reduce_argument(u.v);
    const Cplx w = omega_root();
    const Cplx w2 = w * w;

    // Lattice points with (m,n) = (2,0),(1,1),(0,2) mod 3 are the poles.
    const bool pole_type = (red.m3 == 2 && red.n3 == 0) ||
                           (red.m3 == 1 && red.n3 == 1) ||
                           (red.m3 == 0 && red.n3 == 2);
    if (pole_type && std::abs(red.delta) < 1e-8) {
        return {CNum::infinity(), CNum::infinity()};
    }

    auto [s, c] = taylor_sm_cm(red.delta);
    s.err += u.err;  // |sm'| = |cm|^2 is O(1) on the cell
    c.err += u.err;

    // Nine translation identities: sm(u) and cm(u) in terms of
    // s = sm(delta), c = cm(delta), keyed by (m mod 3, n mod 3).
    const int key = red.m3 * 3 + red.n3;
    switch (key) {
        case 0 * 3 + 0: return {s, c};
        case 2 * 3 + 1: return {cnum_mul_scalar(w, s), cnum_mul_scalar(w2, c)};
        case 1 * 3 + 2: return {cnum_mul_scalar(w2, s), cnum_mul_scalar(w, c)};
        case 1 * 3 + 0:
            return {cnum_div(CNum(Cplx(1.0, 0.0)), c),
                    cnum_mul_scalar(-1.0, cnum_div(s, c))};
        case 0 * 3 + 1:
            return {cnum_div(CNum(w), c), cnum_mul_scalar(-w2, cnum_div(s, c))};
        case 2 * 3 + 2:
            return {cnum_div(CNum(w2), c), cnum_mul_scalar(-w, cnum_div(s, c))};
        case 2 * 3 + 0:
            return {cnum_mul_scalar(-1.0, cnum_div(c, s)),
                    cnum_div(CNum(Cplx(1.0, 0.0)), s)};
        case 1 * 3 + 1:
            return {cnum_mul_scalar(-w, cnum_div(c, s)), cnum_div(CNum(w2), s)};
        case 0 * 3 + 2:
            return {cnum_mul_scalar(-w2, cnum_div(c, s)), cnum_div(CNum(w), s)};
        default: throw std::logic_error("sm_cm: unreachable translation key");
    }
}

std::pair<CNum, CNum> sp_cp(CNum u) {
    auto [s, c] = sm_cm(u);
    if (s.inf || c.inf) {
        // At a common pole of sm and cm the ratios stay finite:
        // sm ~ -1/delta, cm ~ w^k/delta gives sp -> -sm^2/cm finite? No:
        // sp = -sm^2/cm ~ -(1/delta^2)/(w^k/delta) -> O(1/delta): still a pole.
        return {CNum::infinity(), CNum::infinity()};
    }
    const double as = std::abs(s.v), ac = std::abs(c.v);
    if (as < 1e-13) {
        // sm = 0: cp = cm^2/sm blows up, sp = -sm^2/cm -> 0.
        return {CNum(Cplx(0.0, 0.0), s.err), CNum::infinity()};
    }
    if (ac < 1e-13) {
        return {CNum::infinity(), CNum(Cplx(0.0, 0.0), c.err)};
    }
    const CNum s2(s.v * s.v, 2.0 * as * s.err);
    const CNum c2(c.v * c.v, 2.0 * ac * c.err);
    return {cnum_mul_scalar(-1.0, cnum_div(s2, c)), cnum_div(c2, s)};
}

double addition_check_sm(CNum u, CNum v) {
    auto [s1, c1] = sm_cm(u);
    auto [s2, c2] = sm_cm(v);
    auto [sd, cd] = sm_cm(CNum(u.v + v.v));
    if (s1.inf || c1.inf || s2.inf || c2.inf || sd.inf || cd.inf) {
        throw std::domain_error("addition_check_sm: pole among sample points");
    }
    const Cplx S1 = s1.v, C1 = c1.v, S2 = s2.v, C2 = c2.v;
    const Cplx den = 1.0 - S1 * S1 * S1 * S2 * S2 * S2;
    if (std::abs(den) < 1e-12) {
        throw std::domain_error("addition_check_sm: degenerate denominator");
    }
    const Cplx num_s = S1 * C2 * C2 + S2 * C1 * C1 - S1 * S1 * S2 * S2 * C1 * C2;
    const Cplx num_c = C1 * C2 - S1 * S2 * (S1 * C2 * C2 + S2 * C1 * C1);
    const double rs = std::abs(sd.v - num_s / den);
    const double rc = std::abs(cd.v - num_c / den);
    return std::max(rs, rc);
}

double addition_check_sp(CNum u, CNum v) {
    auto [S1n, C1n] = sp_cp(u);
    auto [S2n, C2n] = sp_cp(v);
    auto [Sdn, Cdn] = sp_cp(CNum(u.v + v.v));
    if (S1n.inf || C1n.inf || S2n.inf || C2n.inf || Sdn.inf || Cdn.inf) {
        throw std::domain_error("addition_check_sp: pole among sample points");
    }
    const Cplx S1 = S1n.v, C1 = C1n.v, S2 = S2n.v, C2 = C2n.v;
    const Cplx ss = S1 * S2, cc = C1 * C2;
    const Cplx den_shared = 1.0 - ss * ss * cc;
    const Cplx den_sp = den_shared * (ss * C1 + ss * C2 - 1.0);
    const Cplx den_cp = den_shared * (C1 + C2 - ss * cc);
    if (std::abs(den_sp) < 1e-12 || std::abs(den_cp) < 1e-12) {
        throw std::domain_error("addition_check_sp: degenerate denominator");
    }
    const Cplx t_sp = C1 + C2 - ss * cc;
    const Cplx t_cp = 1.0 - ss * C1 - ss * C2;
    const Cplx f_sp = t_sp * t_sp * ss / den_sp;
    const Cplx f_cp = t_cp * t_cp * cc / den_cp;
    return std::max(std::abs(Sdn.v - f_sp), std::abs(Cdn.v - f_cp));
}

DixonHyperResidual dixon_hyper_relation(double x) {
    if (!(x < 1.0)) {
        throw std::domain_error("dixon_hyper_relation: needs x < 1");
    }
    const CNum w = hyper_W(CNum(x, 0.0));
    const Cplx u = std::pow(Cplx(x, 0.0), 1.0 / 3.0) *
                   std::pow(Cplx(x - 1.0, 0.0), 1.0 / 3.0) * w.v;
    auto [s, c] = sm_cm(CNum(u));
    if (s.inf || c.inf) {
        throw std::domain_error("dixon_hyper_relation: argument hit a pole");
    }
    DixonHyperResidual r{};
    r.cm_res = std::abs(c.v - std::pow(1.0 - x, -1.0 / 3.0));
    // The sm side is stated with cube roots whose branches depend on the
    // sign of x; cubing removes the ambiguity: sm^3 = -x/(1-x).
    const Cplx s3 = s.v * s.v * s.v;
    r.sm_res = std::abs(s3 - Cplx(-x / (1.0 - x), 0.0));
    return r;
}

std::pair<std::vector<Rational>, std::vector<Rational>> pq_series(int n) {
    if (n < 1) throw std::invalid_argument("pq_series: need n >= 1");
    // q = sum_{k>=0} b_k u^{4k-1}, p = sum_{k>=1} a_k u^{4k-1}.
    // p' = -p^2 + 3pq and q' = -q^2 + 3pq give, per power of w = u^4:
    //   (4k-4) a_k = -sum a_i a_{k-i} + 3 sum a_i b_{k-i}   (k >= 2)
    //   (4k+1) b_k = -sum b_i b_{k-i} + 3 a_k + 3 sum a_i b_{k-i}  (k >= 1)
    std::vector<Rational> a(n + 1, Rational(0)), b(n + 1, Rational(0));
    a[1] = Rational(1);
    b[0] = Rational(1);
    for (int k = 1; k <= n; ++k) {
        if (k >= 2) {
            Rational acc(0);
            for (int i = 1; i <= k - 1; ++i) {
                acc += -a[i] * a[k - i] + Rational(3) * a[i] * b[k - i];
            }
            a[k] = acc / Rational(4 * k - 4);
        }
        Rational acc(0);
        for (int i = 1; i <= k - 1; ++i) {
            acc += -b[i] * b[k - i] + Rational(3) * a[i] * b[k - i];
        }
        acc += Rational(3) * a[k];
        b[k] = acc / Rational(4 * k + 1);
    }
    // Consistency: p q (p - q)^2 = 1, i.e. in w-coefficients
    // a b (a - b)^2 = w.  Check every available order and fail loudly.
    std::vector<Rational> d(n + 1, Rational(0));
    for (int k = 0; k <= n; ++k) d[k] = a[k] - b[k];
    auto conv = [n](const std::vector<Rational>& f, const std::vector<Rational>& g) {
        std::vector<Rational> h(n + 1, Rational(0));
        for (int i = 0; i <= n; ++i) {
            if (f[i].is_zero()) continue;
            for (int j = 0; i + j <= n; ++j) h[i + j] += f[i] * g[j];
        }
        return h;
    };
    const auto prod = conv(conv(a, b), conv(d, d));
    for (int k = 0; k <= n; ++k) {
        const Rational expect = (k == 1) ? Rational(1) : Rational(0);
        if (prod[k] != expect) {
            throw std::runtime_error("pq_series: p q (p-q)^2 = 1 failed at order " +
                                     std::to_string(k));
        }
    }
    std::vector<Rational> q_out(b.begin(), b.end());
    std::vector<Rational> p_out(a.begin() + 1, a.end());
    return {q_out, p_out};
}

}  // namespace proflow
