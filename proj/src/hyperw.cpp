/* Hypergeometric W(x): series, Pfaff continuation, Kummer solutions. */

#include "proflow/hyperw.hpp"

#include <cmath>
#include <stdexcept>

namespace proflow {

namespace {

using C = std::complex<double>;

constexpr int kMaxTerms = 4000;
constexpr double kPoleTol = 1e-14;

// Direct Taylor sum, |x| < 1:  sum a_n x^n, a_0 = 1, a_{n+1} = a_n(3n+2)/(3n+4).
CNum series_W(C x) {
    double ax = std::abs(x);
    C term = 1.0, sum = 1.0;
    double acc = 1.0;  // accumulated |terms| for rounding estimate
    for (int n = 0; n < kMaxTerms; ++n) {
        term *= x * ((3.0 * n + 2.0) / (3.0 * n + 4.0));
        sum += term;
        acc += std::abs(term);
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1.0)) {
            // Geometric tail bound: remaining terms < |term| * ax/(1-ax).
            double tail = std::abs(term) * ax / (1.0 - ax);
            return CNum(sum, tail + acc * 1e-16);
        }
    }
    throw std::runtime_error("hyper_W: series did not converge");
}

}  // namespace

CNum hyper_W(CNum x) {
    if (x.inf) return CNum(0.0);  // W ~ -log(-x)/x -> 0 at infinity
    C z = x.v;
    if (std::abs(z - C(1.0)) < kPoleTol)
        throw std::domain_error("hyper_W: pole at x = 1");
    if (std::abs(z) < 1.0 - 1e-12) {
        CNum r = series_W(z);
        r.err += x.err;  // first-order input error pass-through (|W'| ~ O(1))
        return r;
    }
    C pf = z / (z - 1.0);
    if (std::abs(pf) < 1.0 - 1e-12) {
        CNum inner = series_W(pf);
        C val = inner.v / (1.0 - z);
        double scale = 1.0 / std::abs(1.0 - z);
        return CNum(val, inner.err * scale + x.err);
    }
    throw std::domain_error(
        "hyper_W: argument outside series and Pfaff domains (|x|>=1 and Re x>=1/2)");
}

CNum kummer_solution(KummerBranch which, CNum x) {
    switch (which) {
        case KummerBranch::Zero:
            return hyper_W(x);
        case KummerBranch::One: {
            CNum w = hyper_W(CNum(C(1.0) - x.v, x.err));
            return CNum(-w.v, w.err);
        }
        case KummerBranch::Infinity: {
            if (x.inf) return CNum(0.0);
            if (std::abs(x.v) < kPoleTol)
                throw std::domain_error("kummer_solution: W_inf undefined at 0");
            CNum w = hyper_W(CNum(1.0 / x.v, x.err / std::norm(x.v)));
            double s = 1.0 / std::abs(x.v);
            return CNum(w.v / x.v, w.err * s + 1e-16 * std::abs(w.v) * s);
        }
    }
    throw std::logic_error("kummer_solution: bad branch");
}

double w_ode_residual(double x, double h) {
    double wp = (hyper_W(CNum(x + h)).v.real() - hyper_W(CNum(x - h)).v.real()) / (2 * h);
    double w = hyper_W(CNum(x)).v.real();
    return std::abs(3 * x * (1 - x) * wp + (1 - 2 * x) * w - 1.0);
}

namespace {

double simpson(double (*f)(double, double), double p, double a, double b) {
    double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a, p) + 4.0 * f(m, p) + f(b, p));
}

double integrand(double u, double x) {
    return std::pow(1.0 - x + x * u * u * u, -2.0 / 3.0);
}

double adapt(double a, double b, double x, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double left = simpson(integrand, x, a, m);
    double right = simpson(integrand, x, m, b);
    if (depth > 40) return left + right;
    if (std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(a, m, x, left, tol / 2, depth + 1) +
           adapt(m, b, x, right, tol / 2, depth + 1);
}

}  // namespace

double hyper_W_integral(double x, double tol) {
    if (x >= 1.0) throw std::domain_error("hyper_W_integral: requires x < 1");
    double whole = simpson(integrand, x, 0.0, 1.0);
    return adapt(0.0, 1.0, x, whole, tol, 0);
}

}  // namespace proflow
