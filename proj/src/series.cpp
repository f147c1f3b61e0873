/* Flow power series: recurrence, tabulated polynomials, diagonal series. */

#include "proflow/series.hpp"

#include <mutex>
#include <stdexcept>

namespace proflow {

namespace {

constexpr std::size_t kDenominatorDigitLimit = 1000000;

void guard_denominators(const MultiPoly& p) {
    for (const auto& [e, c] : p.terms())
        if (c.denominator_digits() > kDenominatorDigitLimit)
            throw std::overflow_error(
                "flow_series: coefficient denominator exceeded 10^6 digits");
}

MultiPoly x_poly() { return MultiPoly::variable(series_vars(), "x"); }
MultiPoly y_poly() { return MultiPoly::variable(series_vars(), "y"); }

void check_field_component(const MultiPoly& p, const char* which) {
    if (p.is_zero()) return;
    auto d = p.homogeneous_degree();
    if (!d || *d != 2)
        throw std::invalid_argument(std::string("flow_series: vector field component ") +
                                    which + " must be a quadratic form or zero");
}

// Specc series cache, grown on demand; guarded for concurrent readers.
std::mutex g_specc_mutex;
std::vector<MultiPoly> g_specc_layers;  // [0] = layer 1 = x

const std::vector<MultiPoly>& specc_layers(int n) {
    std::lock_guard<std::mutex> lock(g_specc_mutex);
    if (g_specc_layers.empty()) g_specc_layers.push_back(x_poly());
    const MultiPoly w = specc_w(), r = specc_r();
    while (static_cast<int>(g_specc_layers.size()) < n) {
        int i = static_cast<int>(g_specc_layers.size());
        const MultiPoly& li = g_specc_layers.back();
        MultiPoly nxt =
            (li.derivative(0) * w + li.derivative(1) * r).scaled(Rational(1, i));
        guard_denominators(nxt);
        g_specc_layers.push_back(std::move(nxt));
    }
    return g_specc_layers;
}

}  // namespace

std::vector<std::string> series_vars() { return {"x", "y"}; }

MultiPoly specc_w() {
    MultiPoly x = x_poly(), y = y_poly();
    return x * x - (x * y).scaled(Rational(2));
}

MultiPoly specc_r() {
    MultiPoly x = x_poly(), y = y_poly();
    return y * y - (x * y).scaled(Rational(2));
}

HomogSeries flow_series(const MultiPoly& w, const MultiPoly& r, bool first_coord, int n) {
    if (n < 1) throw std::invalid_argument("flow_series: n must be >= 1");
    if (w.vars() != series_vars() || r.vars() != series_vars())
        throw std::invalid_argument("flow_series: field must live in variables (x, y)");
    check_field_component(w, "w");
    check_field_component(r, "r");
    std::vector<MultiPoly> layers;
    layers.reserve(static_cast<std::size_t>(n));
    layers.push_back(first_coord ? x_poly() : y_poly());
    for (int i = 1; i < n; ++i) {
        const MultiPoly& li = layers.back();
        MultiPoly nxt =
            (li.derivative(0) * w + li.derivative(1) * r).scaled(Rational(1, i));
        guard_denominators(nxt);
        layers.push_back(std::move(nxt));
    }
    return HomogSeries(std::move(layers));
}

HomogSeries flow_series(const VectorField2& vf, bool first_coord, int n) {
    auto as_poly = [](const RationalFn& f, const char* which) {
        if (!f.den().is_constant())
            throw std::invalid_argument(
                std::string("flow_series: vector field component ") + which +
                " must be polynomial");
        return f.num().scaled(Rational(1) / f.den().constant_term());
    };
    return flow_series(as_poly(vf.w, "w"), as_poly(vf.r, "r"), first_coord, n);
}

MultiPoly wn_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("wn_polynomial: n must be >= 1");
    const auto& layers = specc_layers(n);
    std::vector<std::string> tv = {"t"};
    MultiPoly t = MultiPoly::variable(tv, "t");
    MultiPoly one = MultiPoly::constant(tv, Rational(1));
    return layers[static_cast<std::size_t>(n - 1)].subst({t, one});
}

int jmath(int n) { return 2 * ((n + 2) / 6); }

bool lowest_power_check(int n) {
    MultiPoly wn = wn_polynomial(n);
    int lowest = -1;
    for (const auto& [e, c] : wn.terms())
        if (lowest < 0 || e[0] < lowest) lowest = e[0];
    return lowest == jmath(n) + 1;
}

bool wn_symmetry_check(int n) {
    std::vector<std::string> tv = {"t"};
    RationalFn t = RationalFn::variable(tv, "t");
    RationalFn one = RationalFn::constant(tv, Rational(1));
    RationalFn wn = RationalFn::from_poly(wn_polynomial(n));
    RationalFn zero = RationalFn::constant(tv, Rational(0));

    // w_n(t) + (-t)^n w_n(1 - 1/t) + (t-1)^n w_n(1/(1-t)) = 0
    RationalFn lhs1 = wn + (-t).pow(n) * wn.subst({one - t.pow(-1)}) +
                      (t - one).pow(n) * wn.subst({(one - t).pow(-1)});
    if (!lhs1.equals(zero)) return false;
    // w_n(t) + (1-t)^n w_n(t/(t-1)) = 0
    RationalFn lhs2 = wn + (one - t).pow(n) * wn.subst({t / (t - one)});
    return lhs2.equals(zero);
}

MultiPoly fn_polynomial(int n, int depth) {
    if (n < 1) throw std::invalid_argument("fn_polynomial: n must be >= 1");
    if (depth < n + 1)
        throw std::invalid_argument("fn_polynomial: depth must exceed n");
    const auto& layers = specc_layers(depth);
    std::vector<std::string> yv = {"y"};
    auto build = [&](int upto) {
        MultiPoly f(yv);
        for (int i = n; i <= upto; ++i) {
            // coefficient of x^n y^{i-n} in layer i
            Rational c = layers[static_cast<std::size_t>(i - 1)].coeff({n, i - n});
            if (!c.is_zero()) f.set_coeff({i - n}, c);
        }
        return f;
    };
    MultiPoly full = build(depth);
    MultiPoly prev = build(depth - 1);
    if (full != prev)
        throw std::runtime_error(
            "fn_polynomial: not stabilized at depth " + std::to_string(depth) +
            "; increase depth beyond n + deg f_n + 1");
    return full;
}

std::vector<Rational> diagonal_coeffs(int n) {
    const auto& layers = specc_layers(n);
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        out.push_back(layers[static_cast<std::size_t>(i - 1)].eval<Rational>(
            {Rational(1), Rational(-1)}));
    return out;
}

bool cube_identity_on(const std::vector<Rational>& coeffs, int n) {
    if (n < 3) throw std::invalid_argument("cube identity needs n >= 3");
    // f = sum c_i z^{i-1}; check f(z) f(-z) (f(z)+f(-z)) - 2 = O(z^{n-2}).
    std::size_t len = static_cast<std::size_t>(n);
    std::vector<Rational> f(len, Rational(0)), g(len, Rational(0));
    for (std::size_t i = 0; i < len && i < coeffs.size(); ++i) {
        f[i] = coeffs[i];
        g[i] = (i % 2 == 0) ? coeffs[i] : -coeffs[i];
    }
    auto mul = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> p(len, Rational(0));
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = 0; i + j < len; ++j) p[i + j] += a[i] * b[j];
        return p;
    };
    std::vector<Rational> sum(len);
    for (std::size_t i = 0; i < len; ++i) sum[i] = f[i] + g[i];
    std::vector<Rational> h = mul(mul(f, g), sum);
    h[0] -= Rational(2);
    for (int k = 0; k <= n - 3; ++k)
        if (!h[static_cast<std::size_t>(k)].is_zero()) return false;
    return true;
}

bool series_cube_identity(int n) { return cube_identity_on(diagonal_coeffs(n), n); }

bool pde_consistency(const MultiPoly& w, const MultiPoly& r, int n) {
    HomogSeries s = flow_series(w, r, true, n);
    MultiPoly u(series_vars());
    for (const auto& l : s.layers()) u += l;
    MultiPoly lhs = u.derivative(0) * (w - x_poly()) + u.derivative(1) * (r - y_poly()) + u;
    for (const auto& [e, c] : lhs.terms()) {
        int deg = 0;
        for (int k : e) deg += k;
        if (deg <= n - 1 && !c.is_zero()) return false;
    }
    return true;
}

bool orbit_invariance_series(const MultiPoly& w, const MultiPoly& r,
                             const MultiPoly& W, int n) {
    HomogSeries su = flow_series(w, r, true, n);
    HomogSeries sv = flow_series(w, r, false, n);
    const int cap = n - 1;  // z-degrees 0..cap are exact
    using ZSeries = std::vector<MultiPoly>;
    auto zero_series = [&]() {
        return ZSeries(static_cast<std::size_t>(cap + 1), MultiPoly(series_vars()));
    };
    auto zmul = [&](const ZSeries& a, const ZSeries& b) {
        ZSeries p = zero_series();
        for (int i = 0; i <= cap; ++i) {
            if (a[static_cast<std::size_t>(i)].is_zero()) continue;
            for (int j = 0; i + j <= cap; ++j)
                p[static_cast<std::size_t>(i + j)] +=
                    a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
        }
        return p;
    };
    ZSeries U = zero_series(), V = zero_series();
    for (int k = 0; k <= cap; ++k) {
        U[static_cast<std::size_t>(k)] = su.layer(k + 1);
        V[static_cast<std::size_t>(k)] = sv.layer(k + 1);
    }
    // Evaluate W(U, V) with per-variable power caches of z-series.
    std::vector<ZSeries> xp = {zero_series()}, yp = {zero_series()};
    xp[0][0] = MultiPoly::constant(series_vars(), Rational(1));
    yp[0][0] = xp[0][0];
    ZSeries acc = zero_series();
    for (const auto& [e, c] : W.terms()) {
        while (static_cast<int>(xp.size()) <= e[0]) xp.push_back(zmul(xp.back(), U));
        while (static_cast<int>(yp.size()) <= e[1]) yp.push_back(zmul(yp.back(), V));
        ZSeries term = zmul(xp[static_cast<std::size_t>(e[0])],
                            yp[static_cast<std::size_t>(e[1])]);
        for (int k = 0; k <= cap; ++k)
            acc[static_cast<std::size_t>(k)] += term[static_cast<std::size_t>(k)].scaled(c);
    }
    if (acc[0] != W) return false;
    for (int k = 1; k <= cap; ++k)
        if (!acc[static_cast<std::size_t>(k)].is_zero()) return false;
    return true;
}

bool period_symmetry_check(int n) {
    const auto& layers = specc_layers(n);
    MultiPoly mx = -x_poly();
    MultiPoly ymx = y_poly() - x_poly();
    for (int i = 0; i < n; ++i)
        if (layers[static_cast<std::size_t>(i)] +
                layers[static_cast<std::size_t>(i)].subst({mx, ymx}) !=
            MultiPoly(series_vars()))
            return false;
    return true;
}

Rational binomial(const Rational& a, int k) {
    Rational num(1);
    for (int j = 0; j < k; ++j) num *= (a - Rational(j));
    Rational den(1);
    for (int j = 2; j <= k; ++j) den *= Rational(j);
    return num / den;
}

}  // namespace proflow
