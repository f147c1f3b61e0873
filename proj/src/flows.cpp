#include "proflow/flows.hpp"

#include "proflow/exprs.hpp"
#include "proflow/hyperw.hpp"
#include "proflow/dixon.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace proflow {
namespace {

using Cplx = std::complex<double>;

constexpr double kSingularTol = 1e-12;   // relative denominator cutoff
constexpr double kRemovableTol = 1e-8;   // width of removable-limit windows

Cplx ipow(Cplx b, int e) {
    if (e < 0) return 1.0 / ipow(b, -e);
    Cplx r = 1.0;
    while (e-- > 0) r *= b;
    return r;
}

// Magnitude scale of a polynomial at a point: sum of |coeff| |coord|^e,
// the natural yardstick for "this value is cancellation noise".
double abs_eval(const MultiPoly& p, const std::vector<Cplx>& pt) {
    double acc = 0.0;
    for (const auto& [expo, coeff] : p.terms()) {
        double m = std::fabs(coeff.to_double());
        for (size_t i = 0; i < expo.size(); ++i) {
            if (expo[i] > 0) m *= std::pow(std::abs(pt[i]), double(expo[i]));
        }
        acc += m;
    }
    return acc;
}

// num/den with an infinity flag when the denominator is zero at working
// precision, and a first-order rounding estimate.
CNum eval_ratio(const RationalFn& f, const std::vector<Cplx>& pt) {
    const Cplx nv = f.num().eval<Cplx>(pt);
    const Cplx dv = f.den().eval<Cplx>(pt);
    const double dscale = abs_eval(f.den(), pt);
    if (std::abs(dv) <= kSingularTol * std::max(dscale, 1e-300)) {
        return CNum::infinity();
    }
    const double nscale = abs_eval(f.num(), pt);
    const Cplx val = nv / dv;
    const double err = (nscale + std::abs(val) * dscale) * 1e-16 / std::abs(dv);
    return CNum(val, err);
}

FlowValue undefined_value() {
    FlowValue f;
    f.defined = false;
    return f;
}

// Limit values of the level-3 flow on xy(x-y) = 0, routed by whichever
// factor is smallest.
CNum lambda_limit(Cplx x, Cplx y) {
    const double ax = std::abs(x), ay = std::abs(y), ad = std::abs(x - y);
    if (ax <= ay && ax <= ad) return CNum(Cplx(0.0, 0.0));
    if (ay <= ad) {
        const Cplx den = 1.0 - x;
        if (std::abs(den) < kSingularTol) return CNum::infinity();
        return CNum(x / den, 1e-15 * std::abs(x / den));
    }
    const Cplx den = 1.0 + x;
    if (std::abs(den) < kSingularTol) return CNum::infinity();
    return CNum(x / den, 1e-15 * std::abs(x / den));
}

CNum lambda_full(Cplx x, Cplx y, int branch) {
    const Cplx P = x * y * (x - y);
    Cplx vr = std::pow(P, 1.0 / 3.0);
    const Cplx w = omega_root();
    for (int i = 0; i < ((branch % 3) + 3) % 3; ++i) vr *= w;
    auto [s, c] = sm_cm(CNum(vr));
    if (s.inf || c.inf) {
        // All three cube-root branches hit sm/cm poles simultaneously (the
        // pole classes are permuted by the omega rotation), and there the
        // closed form has a removable singularity: with s ~ c ~ 1/d the
        // leading terms give num/den -> -vr^3/(xy) = y - x.  This is the
        // case of lambda(y, x) on the locus yx(y-x) = -Pi, for instance.
        return CNum(y - x, 1e-8 * (1.0 + std::abs(y - x)));
    }
    const Cplx S = s.v, C = c.v;
    const Cplx core = C * vr * vr - S * C * C * y * vr + S * S * x * y;
    const Cplx num = vr * core * core;
    const Cplx f3 = C * C * vr * vr - S * x * vr + S * S * C * x * y;
    const Cplx den = y * (x - C * C * C * y) * f3;
    const double dscale = std::abs(y) *
                          (std::abs(x) + std::abs(C * C * C * y)) *
                          (std::abs(C * C * vr * vr) + std::abs(S * x * vr) +
                           std::abs(S * S * C * x * y));
    if (std::abs(den) <= kSingularTol * std::max(dscale, 1e-300)) {
        return CNum::infinity();
    }
    const Cplx val = num / den;
    return CNum(val, 1e-13 * (1.0 + std::abs(val)));
}

}  // namespace

std::string FlowKind::name() const {
    switch (tag) {
        case Tag::Identity: return "identity";
        case Tag::PhiN: return "phi_" + std::to_string(n);
        case Tag::Exp: return "exp";
        case Tag::Tan: return "tan";
        case Tag::Log: return "log";
        case Tag::E: return "e";
        case Tag::T: return "t";
        case Tag::Lambda: return "Lambda";
    }
    throw std::logic_error("FlowKind::name: bad tag");
}

FlowKind FlowKind::parse(const std::string& text) {
    if (text == "identity") return identity();
    if (text == "exp") return exp_flow();
    if (text == "tan") return tan_flow();
    if (text == "log") return log_flow();
    if (text == "e") return e_flow();
    if (text == "t") return t_flow();
    if (text == "Lambda") return lambda_flow();
    if (text.rfind("phi_", 0) == 0) {
        const int n = std::stoi(text.substr(4));
        if (n < 0) throw std::invalid_argument("FlowKind: phi_N needs N >= 0");
        return phi_n(n);
    }
    throw std::invalid_argument("FlowKind: unknown flow '" + text + "'");
}

FlowValue classical_flow_eval(FlowKind kind, CNum xc, CNum yc) {
    const Cplx x = xc.v, y = yc.v;
    FlowValue out;
    switch (kind.tag) {
        case FlowKind::Tag::Identity:
            out.u = CNum(x);
            out.v = CNum(y);
            return out;
        case FlowKind::Tag::PhiN: {
            const Cplx w = y + 1.0;
            if (std::abs(w) < kSingularTol) return undefined_value();
            out.u = CNum(x * ipow(w, kind.n - 1));
            out.v = CNum(y / w);
            return out;
        }
        case FlowKind::Tag::Exp:
            out.u = CNum(x * std::exp(y));
            out.v = CNum(y);
            return out;
        case FlowKind::Tag::Tan: {
            if (std::abs(std::cos(y)) < kSingularTol) return undefined_value();
            if (std::abs(y) < kRemovableTol) {
                const Cplx den = 1.0 - x;
                if (std::abs(den) < kSingularTol) return undefined_value();
                out.u = CNum(x / den);
                out.v = CNum(y);
                return out;
            }
            const Cplx ty = std::tan(y);
            const Cplx den = y - x * ty;
            if (std::abs(den) <
                kSingularTol * std::max(std::abs(y) + std::abs(x * ty), 1e-300)) {
                return undefined_value();
            }
            out.u = CNum((x * y + y * y * ty) / den);
            out.v = CNum(y);
            return out;
        }
        case FlowKind::Tag::Log: {
            const Cplx w = y + 1.0;
            if (std::abs(w) < kSingularTol) return undefined_value();
            if (std::abs(y) < kRemovableTol) {
                const Cplx den = 1.0 + x;
                if (std::abs(den) < kSingularTol) return undefined_value();
                out.u = CNum(x / den);
                out.v = CNum(y / w);
                return out;
            }
            const Cplx lg = std::log(w);  // principal branch
            const Cplx inner = y + x * lg;
            if (std::abs(inner) <
                kSingularTol * std::max(std::abs(y) + std::abs(x * lg), 1e-300)) {
                return undefined_value();
            }
            out.u = CNum(x * y / (w * inner));
            out.v = CNum(y / w);
            return out;
        }
        case FlowKind::Tag::E: {
            const Cplx ex = std::exp(x + y);
            out.u = CNum(((x - y) * ex + x + y) / 2.0);
            out.v = CNum(((y - x) * ex + x + y) / 2.0);
            return out;
        }
        case FlowKind::Tag::T: {
            const Cplx d = x - y;
            if (std::abs(d) < kRemovableTol) {
                const Cplx den = 1.0 - 2.0 * x;
                if (std::abs(den) < kSingularTol) return undefined_value();
                out.u = CNum(x / den);
                out.v = out.u;
                return out;
            }
            if (std::abs(std::cos(d)) < kSingularTol) return undefined_value();
            const Cplx td = std::tan(d);
            const Cplx den = d - (x + y) * td;
            if (std::abs(den) <
                kSingularTol * std::max(std::abs(d) + std::abs((x + y) * td), 1e-300)) {
                return undefined_value();
            }
            out.u = CNum(d * (x - y * td) / den);
            out.v = CNum(d * (y + x * td) / den);
            return out;
        }
        case FlowKind::Tag::Lambda: {
            auto [u, v] = lambda_pair(xc, yc);
            out.u = u;
            out.v = v;
            return out;
        }
    }
    throw std::logic_error("classical_flow_eval: bad tag");
}

CNum lambda_eval(CNum xc, CNum yc, int branch) {
    const Cplx x = xc.v, y = yc.v;
    // The flow is 1-homogenic and xy(x-y) is 3-homogenic, so proximity to
    // the removable locus must be measured relative to the point scale;
    // an absolute cutoff would misroute uniformly small points (boundary
    // rays), whose limit-formula values differ from the flow at O(|x|^2).
    const double ax = std::abs(x), ay = std::abs(y), ad = std::abs(x - y);
    const double scale = std::max({ax, ay, ad});
    if (scale < 1e-300) return CNum(Cplx(0.0, 0.0));
    const double rel = std::min({ax, ay, ad}) / scale;
    if (rel < 1e-12) return lambda_limit(x, y);
    if (rel < 1e-7) {
        // Close to the removable locus, evaluate both routes and insist
        // they agree before trusting the closed form.
        const CNum lim = lambda_limit(x, y);
        const CNum full = lambda_full(x, y, branch);
        if (!lim.inf && !full.inf &&
            std::abs(lim.v - full.v) > 1e-4 * std::max(1.0, scale)) {
            throw std::logic_error(
                "lambda_eval: limit and closed-form routes disagree near "
                "the removable locus");
        }
        return full.inf ? lim : full;
    }
    return lambda_full(x, y, branch);
}

std::pair<CNum, CNum> lambda_pair(CNum x, CNum y) {
    return {lambda_eval(x, y), lambda_eval(y, x)};
}

CNum R_eval(CNum A, CNum B, CNum x, CNum y) {
    return eval_ratio(R_expr(), {A.v, B.v, x.v, y.v});
}

CNum T_eval(CNum A, CNum B, CNum x, CNum y) {
    if (std::abs(A.v) < 1e-300) {
        throw std::domain_error("T_eval: avatar has a pole at A = 0");
    }
    return eval_ratio(T_expr(), {A.v, B.v, x.v, y.v});
}

CNum E_eval(CNum x, CNum y) {
    const Cplx disc = 1.0 - 4.0 * x.v * y.v * (x.v - y.v);
    if (std::abs(disc) < 1e-14) {
        throw std::domain_error("E_eval: branch point of sqrt(1 - 4xy(x-y))");
    }
    // On y = 0 the avatar degenerates to 0/0; the limit (expand B = 1 - x^2 y
    // + O(y^2) through T) is -x/(1+x), not the x/(1-x) the level-3 flow takes
    // on that locus.
    if (std::abs(y.v) < kRemovableTol * std::max(1.0, std::abs(x.v))) {
        if (std::abs(x.v) < kRemovableTol) return CNum(Cplx(0.0, 0.0));
        const Cplx den = 1.0 + x.v;
        if (std::abs(den) < kSingularTol) return CNum::infinity();
        return CNum(-x.v / den, 1e-14 * std::abs(x.v / den));
    }
    const Cplx B = 0.5 + 0.5 * std::sqrt(disc);  // principal branch
    return T_eval(CNum(1.0), CNum(B), x, y);
}

double ell_conjugation_check(CNum xc, CNum yc) {
    const Cplx x = xc.v, y = yc.v;
    if (std::abs(y) < kSingularTol || std::abs(x + y) < kSingularTol) {
        throw std::domain_error("ell_conjugation_check: conjugator singular");
    }
    // Transport through l(x,y) = x(x+y)/y . (x+y), apply the exp flow,
    // come back through l^{-1}(P,Q) = (PQ/(P+Q), Q^2/(P+Q)).
    const Cplx P = x * (x + y) / y;
    const Cplx Q = x + y;
    const Cplx Pe = P * std::exp(Q);
    const Cplx S = Pe + Q;
    if (std::abs(S) < kSingularTol * (std::abs(Pe) + std::abs(Q))) {
        throw std::domain_error("ell_conjugation_check: l^{-1} singular");
    }
    const Cplx u_conj = Pe * Q / S;
    const Cplx v_conj = Q * Q / S;
    // Printed closed form of the conjugated flow.
    const Cplx ex = std::exp(x + y);
    const Cplx den = x * ex + y;
    if (std::abs(den) < kSingularTol * (std::abs(x * ex) + std::abs(y))) {
        throw std::domain_error("ell_conjugation_check: printed form singular");
    }
    const Cplx u_closed = x * (x + y) * ex / den;
    const Cplx v_closed = y * (x + y) / den;
    return std::max(std::abs(u_conj - u_closed), std::abs(v_conj - v_closed));
}

double c0_vanishing(double x) {
    const CNum w = hyper_W(CNum(x));
    const CNum lv = lambda_eval(CNum(x * w.v), CNum(w.v));
    if (lv.inf) throw std::domain_error("c0_vanishing: flow pole on the curve");
    return lv.abs();
}

}  // namespace proflow
