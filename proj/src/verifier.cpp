#include "proflow/verifier.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace proflow {
namespace {

using Cplx = std::complex<double>;

const std::vector<std::string>& xy_vars() {
    static const std::vector<std::string> v{"x", "y"};
    return v;
}

MultiPoly xv() { return MultiPoly::variable(xy_vars(), "x"); }
MultiPoly yv() { return MultiPoly::variable(xy_vars(), "y"); }

VectorField2 make_field(MultiPoly w, MultiPoly r) {
    return VectorField2{RationalFn::from_poly(std::move(w)),
                        RationalFn::from_poly(std::move(r))};
}

bool never_singular(Cplx, Cplx) { return false; }

std::vector<CatalogueEntry> build_catalogue() {
    const MultiPoly x = xv(), y = yv();
    const MultiPoly zero = MultiPoly::constant(xy_vars(), Rational(0));
    std::vector<CatalogueEntry> cat;

    cat.push_back({FlowKind::identity(), make_field(zero, zero), std::nullopt,
                   false, never_singular});

    for (int n = 0; n <= 5; ++n) {
        RationalFn orbit =
            (n >= 1) ? RationalFn(x * y.pow(unsigned(n - 1)), MultiPoly::constant(xy_vars(), Rational(1)))
                     : RationalFn(x, y);  // level 0: x/y constant along orbits
        cat.push_back({FlowKind::phi_n(n),
                       make_field(x * y.scaled(Rational(n - 1)), -(y * y)),
                       std::move(orbit), false,
                       [](Cplx, Cplx yy) { return std::abs(yy + 1.0) < 1e-3; }});
    }

    cat.push_back({FlowKind::exp_flow(), make_field(x * y, zero),
                   RationalFn::from_poly(y), true, never_singular});

    cat.push_back({FlowKind::tan_flow(), make_field(x * x + y * y, zero),
                   RationalFn::from_poly(y), true, [](Cplx xx, Cplx yy) {
                       if (std::abs(std::cos(yy)) < 1e-3) return true;
                       const Cplx t = std::tan(yy);
                       // relative: a scaled-down point is only near-singular
                       // if the cancellation is, proportionally
                       if (std::abs(yy - xx * t) <
                           1e-3 * (std::abs(yy) + std::abs(xx * t) + 1e-300))
                           return true;
                       return false;
                   }});

    cat.push_back({FlowKind::log_flow(), make_field(-(x * x) - x * y, -(y * y)),
                   std::nullopt, false, [](Cplx xx, Cplx yy) {
                       const Cplx w = yy + 1.0;
                       if (std::abs(w) < 1e-3) return true;
                       // standoff from the principal log cut
                       if (w.real() <= 0.0 && std::abs(w.imag()) < 1e-3) return true;
                       const Cplx lg = std::log(w);
                       if (std::abs(yy + xx * lg) <
                           1e-3 * (std::abs(yy) + std::abs(xx * lg) + 1e-300))
                           return true;
                       return false;
                   }});

    cat.push_back({FlowKind::e_flow(),
                   make_field((x * x - y * y).scaled(Rational(1, 2)),
                              (y * y - x * x).scaled(Rational(1, 2))),
                   RationalFn::from_poly(x + y), true, never_singular});

    cat.push_back({FlowKind::t_flow(), make_field(x * x + y * y, x * x + y * y),
                   RationalFn::from_poly(x - y), true, [](Cplx xx, Cplx yy) {
                       const Cplx d = xx - yy;
                       if (std::abs(std::cos(d)) < 1e-3) return true;
                       if (std::abs(d) < 1e-3 && std::abs(1.0 - 2.0 * xx) < 1e-3)
                           return true;
                       const Cplx t = std::tan(d);
                       const Cplx den = d - (xx + yy) * t;
                       if (std::abs(den) <
                           1e-3 * (std::abs(d) + std::abs((xx + yy) * t) + 1e-300))
                           return true;
                       return false;
                   }});

    cat.push_back({FlowKind::lambda_flow(),
                   make_field(x * x - x * y.scaled(Rational(2)),
                              y * y - x * y.scaled(Rational(2))),
                   RationalFn::from_poly(x * y * (x - y)), true, never_singular});
    return cat;
}

FlowValue eval_or_throw(const FlowEvaluator& flow, CNum x, CNum y,
                        const char* where) {
    const FlowValue f = flow.eval(x, y);
    if (!f.defined) {
        throw std::domain_error(flow.name + ": undefined at " + where);
    }
    return f;
}

double max_norm(Cplx a, Cplx b) { return std::max(std::abs(a), std::abs(b)); }

}  // namespace

FlowEvaluator make_flow_evaluator(FlowKind kind) {
    return {[kind](CNum x, CNum y) { return classical_flow_eval(kind, x, y); },
            kind.name()};
}

const std::vector<CatalogueEntry>& flow_catalogue() {
    static const std::vector<CatalogueEntry> cat = build_catalogue();
    return cat;
}

const CatalogueEntry& catalogue_entry(FlowKind kind) {
    for (const CatalogueEntry& e : flow_catalogue()) {
        if (e.kind.tag == kind.tag && e.kind.n == kind.n) return e;
    }
    throw std::invalid_argument("catalogue_entry: flow not catalogued: " + kind.name());
}

double prte_residual(const FlowEvaluator& flow, CNum x, CNum y, CNum z) {
    const Cplx zz = z.v;
    if (std::abs(zz) < 1e-12 || std::abs(zz - 1.0) < 1e-12) {
        throw std::domain_error("prte_residual: z must avoid 0 and 1");
    }
    const FlowValue inner = eval_or_throw(flow, CNum(x.v * zz), CNum(y.v * zz), "(xz, yz)");
    if (inner.u.inf || inner.v.inf) {
        throw std::domain_error(flow.name + ": pole at (xz, yz)");
    }
    const Cplx s = (1.0 - zz) / zz;
    const FlowValue outer = eval_or_throw(flow, CNum(inner.u.v * s), CNum(inner.v.v * s),
                                          "phi(xz,yz)(1-z)/z");
    const FlowValue direct = eval_or_throw(flow, x, y, "(x, y)");
    if (outer.u.inf || outer.v.inf || direct.u.inf || direct.v.inf) {
        throw std::domain_error(flow.name + ": pole among functional-equation points");
    }
    return max_norm((1.0 - zz) * direct.u.v - outer.u.v,
                    (1.0 - zz) * direct.v.v - outer.v.v);
}

double boundary_residual(const FlowEvaluator& flow, CNum x, CNum y) {
    const double z = 1e-6;
    const FlowValue f = eval_or_throw(flow, CNum(x.v * z), CNum(y.v * z), "(xz, yz)");
    if (f.u.inf || f.v.inf) {
        throw std::domain_error(flow.name + ": pole on the boundary ray");
    }
    return max_norm(f.u.v / z - x.v, f.v.v / z - y.v);
}

std::pair<CNum, CNum> vector_field_numeric(const FlowEvaluator& flow, CNum x, CNum y) {
    auto g = [&](double z) {
        const FlowValue f =
            eval_or_throw(flow, CNum(x.v * z), CNum(y.v * z), "(xz, yz)");
        if (f.u.inf || f.v.inf) {
            throw std::domain_error(flow.name + ": pole near z = 0");
        }
        return std::pair<Cplx, Cplx>{f.u.v / z, f.v.v / z};
    };
    // Central differences at two step sizes + one Richardson level: the
    // O(h^2) error terms cancel in (4 D_{h/2} - D_h) / 3.
    const double h = 1e-5;
    const auto [u1p, v1p] = g(h);
    const auto [u1m, v1m] = g(-h);
    const auto [u2p, v2p] = g(h / 2);
    const auto [u2m, v2m] = g(-h / 2);
    const Cplx du1 = (u1p - u1m) / (2 * h), dv1 = (v1p - v1m) / (2 * h);
    const Cplx du2 = (u2p - u2m) / h, dv2 = (v2p - v2m) / h;
    return {CNum((4.0 * du2 - du1) / 3.0, 1e-9),
            CNum((4.0 * dv2 - dv1) / 3.0, 1e-9)};
}

double pde_residual(const std::function<CNum(CNum, CNum)>& u, CNum x, CNum y,
                    const VectorField2& vf, double h) {
    const double step = h * std::max({1.0, std::abs(x.v), std::abs(y.v)});
    auto val = [&](Cplx xx, Cplx yy) {
        const CNum c = u(CNum(xx), CNum(yy));
        if (c.inf) throw std::domain_error("pde_residual: pole at a stencil point");
        return c.v;
    };
    const Cplx ux = (val(x.v + step, y.v) - val(x.v - step, y.v)) / (2.0 * step);
    const Cplx uy = (val(x.v, y.v + step) - val(x.v, y.v - step)) / (2.0 * step);
    const Cplx u0 = val(x.v, y.v);
    const Cplx w = vf.w.eval<Cplx>({x.v, y.v});
    const Cplx r = vf.r.eval<Cplx>({x.v, y.v});
    return std::abs(ux * (w - x.v) + uy * (r - y.v) + u0);
}

double orbit_invariance(const FlowEvaluator& flow, const RationalFn& W, CNum x,
                        CNum y, CNum z) {
    if (std::abs(z.v) < 1e-12) {
        throw std::domain_error("orbit_invariance: z must be nonzero");
    }
    const FlowValue f = eval_or_throw(flow, CNum(x.v * z.v), CNum(y.v * z.v), "(xz, yz)");
    if (f.u.inf || f.v.inf) {
        throw std::domain_error(flow.name + ": pole at (xz, yz)");
    }
    const Cplx w1 = W.eval<Cplx>({f.u.v / z.v, f.v.v / z.v});
    const Cplx w0 = W.eval<Cplx>({x.v, y.v});
    return std::abs(w1 - w0);
}

double iteration_residual(const FlowEvaluator& flow, int n, CNum x, CNum y) {
    if (n < 1) throw std::invalid_argument("iteration_residual: n >= 1");
    Cplx u = x.v, v = y.v;
    for (int i = 0; i < n; ++i) {
        const FlowValue f = eval_or_throw(flow, CNum(u), CNum(v), "iterate");
        if (f.u.inf || f.v.inf) {
            throw std::domain_error(flow.name + ": pole along the iteration");
        }
        u = f.u.v;
        v = f.v.v;
    }
    const FlowValue big =
        eval_or_throw(flow, CNum(double(n) * x.v), CNum(double(n) * y.v), "(nx, ny)");
    if (big.u.inf || big.v.inf) {
        throw std::domain_error(flow.name + ": pole at (nx, ny)");
    }
    return max_norm(double(n) * u - big.u.v, double(n) * v - big.v.v);
}

namespace {

struct Sampler {
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> unit{-1.0, 1.0};

    explicit Sampler(std::uint64_t seed) : rng(seed) {}
    Cplx point() { return Cplx(unit(rng), unit(rng)); }
    double ztime() {  // z in (0.1, 0.9), away from 0 and 1
        return 0.1 + 0.4 * (unit(rng) + 1.0);
    }
};

// A sample is admissible when no intermediate of the check is undefined,
// at a pole, within the standoff distance of the singular set, or large
// enough (|value| > 10) to indicate the orbit passed near a pole.
bool flow_value_ok(const FlowValue& f, double cap = 10.0) {
    return f.defined && !f.u.inf && !f.v.inf && std::abs(f.u.v) <= cap &&
           std::abs(f.v.v) <= cap;
}

template <typename Fn>
double max_over_samples(int points, int max_tries, Fn&& attempt) {
    double worst = 0.0;
    int got = 0;
    for (int tries = 0; got < points; ++tries) {
        if (tries > max_tries) {
            throw std::runtime_error("verifier: could not draw enough admissible samples");
        }
        const std::optional<double> r = attempt();
        if (!r) continue;
        worst = std::max(worst, *r);
        ++got;
    }
    return worst;
}

}  // namespace

std::vector<CheckReport> verify_flow(FlowKind kind, std::uint64_t seed, int points) {
    const CatalogueEntry& entry = catalogue_entry(kind);
    const FlowEvaluator flow = make_flow_evaluator(kind);
    Sampler smp(seed);
    const int max_tries = 1000 * points + 10000;
    std::vector<CheckReport> out;

    auto admissible_xy = [&](Cplx& x, Cplx& y) {
        x = smp.point();
        y = smp.point();
        return !entry.near_singular(x, y);
    };

    {  // functional equation
        const double tol = 1e-8;
        const double worst = max_over_samples(points, max_tries, [&]() -> std::optional<double> {
            Cplx x, y;
            if (!admissible_xy(x, y)) return std::nullopt;
            const double z = smp.ztime();
            try {
                if (entry.near_singular(x * z, y * z)) return std::nullopt;
                const FlowValue inner = flow.eval(CNum(x * z), CNum(y * z));
                if (!flow_value_ok(inner)) return std::nullopt;
                const Cplx s = (1.0 - z) / z;
                if (entry.near_singular(inner.u.v * s, inner.v.v * s)) return std::nullopt;
                if (!flow_value_ok(flow.eval(CNum(inner.u.v * s), CNum(inner.v.v * s)), 1e3))
                    return std::nullopt;
                if (!flow_value_ok(flow.eval(CNum(x), CNum(y)), 1e3)) return std::nullopt;
                return prte_residual(flow, CNum(x), CNum(y), CNum(z));
            } catch (const std::domain_error&) {
                return std::nullopt;
            }
        });
        out.push_back({flow.name, "prte", points, worst, tol, worst < tol});
    }

    {  // boundary condition
        const double tol = 1e-4;
        const double worst = max_over_samples(points, max_tries, [&]() -> std::optional<double> {
            Cplx x, y;
            if (!admissible_xy(x, y)) return std::nullopt;
            try {
                if (entry.near_singular(x * 1e-6, y * 1e-6)) return std::nullopt;
                return boundary_residual(flow, CNum(x), CNum(y));
            } catch (const std::domain_error&) {
                return std::nullopt;
            }
        });
        out.push_back({flow.name, "boundary", points, worst, tol, worst < tol});
    }

    {  // numeric vector field against the declared one
        const double tol = 1e-4;
        const double worst = max_over_samples(points, max_tries, [&]() -> std::optional<double> {
            Cplx x, y;
            if (!admissible_xy(x, y)) return std::nullopt;
            try {
                const auto [wu, wv] = vector_field_numeric(flow, CNum(x), CNum(y));
                const Cplx dw = entry.field.w.eval<Cplx>({x, y});
                const Cplx dr = entry.field.r.eval<Cplx>({x, y});
                return max_norm(wu.v - dw, wv.v - dr);
            } catch (const std::domain_error&) {
                return std::nullopt;
            }
        });
        out.push_back({flow.name, "vector_field", points, worst, tol, worst < tol});
    }

    {  // PDE on the first coordinate
        const double tol = 1e-5;
        const double worst = max_over_samples(points, max_tries, [&]() -> std::optional<double> {
            Cplx x, y;
            if (!admissible_xy(x, y)) return std::nullopt;
            // keep the whole stencil clear of the singular set
            for (double dx : {-2e-5, 2e-5}) {
                if (entry.near_singular(x + dx, y) || entry.near_singular(x, y + dx))
                    return std::nullopt;
            }
            if (!flow_value_ok(flow.eval(CNum(x), CNum(y)))) return std::nullopt;
            auto u = [&](CNum a, CNum b) {
                const FlowValue f = flow.eval(a, b);
                if (!f.defined) {
                    throw std::domain_error(flow.name + ": undefined at stencil point");
                }
                return f.u;
            };
            try {
                return pde_residual(u, CNum(x), CNum(y), entry.field);
            } catch (const std::domain_error&) {
                return std::nullopt;
            }
        });
        out.push_back({flow.name, "pde", points, worst, tol, worst < tol});
    }

    if (entry.orbit) {  // orbit invariance
        const double tol = 1e-8;
        const double worst = max_over_samples(points, max_tries, [&]() -> std::optional<double> {
            Cplx x, y;
            if (!admissible_xy(x, y)) return std::nullopt;
            const double z = smp.ztime();
            try {
                if (entry.near_singular(x * z, y * z)) return std::nullopt;
                const FlowValue f = flow.eval(CNum(x * z), CNum(y * z));
                if (!flow_value_ok(f)) return std::nullopt;
                // keep the transported point moderate so the polynomial
                // invariant is evaluated in a well-conditioned regime
                if (std::abs(f.u.v / z) > 5.0 || std::abs(f.v.v / z) > 5.0)
                    return std::nullopt;
                // orbit functions with denominators (level 0) need them nonzero
                const RationalFn& W = *entry.orbit;
                if (std::abs(W.den().eval<Cplx>({x, y})) < 1e-3) return std::nullopt;
                if (std::abs(W.den().eval<Cplx>({f.u.v / z, f.v.v / z})) < 1e-3)
                    return std::nullopt;
                return orbit_invariance(flow, W, CNum(x), CNum(y), CNum(z));
            } catch (const std::domain_error&) {
                return std::nullopt;
            }
        });
        out.push_back({flow.name, "orbit", points, worst, tol, worst < tol});
    }

    if (entry.in_iteration_checks) {  // n phi^n = phi(n ·) for n = 2, 3
        const double tol = 1e-8;
        for (int n : {2, 3}) {
            const double worst = max_over_samples(points, max_tries, [&]() -> std::optional<double> {
                Cplx x = smp.point() * 0.3, y = smp.point() * 0.3;
                if (entry.near_singular(x, y) ||
                    entry.near_singular(double(n) * x, double(n) * y))
                    return std::nullopt;
                try {
                    Cplx u = x, v = y;
                    for (int i = 0; i < n; ++i) {
                        const FlowValue f = flow.eval(CNum(u), CNum(v));
                        if (!flow_value_ok(f)) return std::nullopt;
                        if (entry.near_singular(f.u.v, f.v.v)) return std::nullopt;
                        u = f.u.v;
                        v = f.v.v;
                    }
                    if (!flow_value_ok(flow.eval(CNum(double(n) * x), CNum(double(n) * y)), 1e3))
                        return std::nullopt;
                    return iteration_residual(flow, n, CNum(x), CNum(y));
                } catch (const std::domain_error&) {
                    return std::nullopt;
                }
            });
            out.push_back({flow.name, "iteration_n" + std::to_string(n), points, worst,
                           tol, worst < tol});
        }
    }

    return out;
}

std::vector<CheckReport> verify_all(std::uint64_t seed, int points) {
    std::vector<CheckReport> all;
    for (const CatalogueEntry& e : flow_catalogue()) {
        std::vector<CheckReport> one = verify_flow(e.kind, seed, points);
        all.insert(all.end(), one.begin(), one.end());
    }
    return all;
}

}  // namespace proflow
