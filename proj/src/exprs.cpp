#include "proflow/exprs.hpp"

namespace proflow {
namespace {

MultiPoly var(const std::vector<std::string>& vars, const std::string& n) {
    return MultiPoly::variable(vars, n);
}

}  // namespace

const std::vector<std::string>& abxy_vars() {
    static const std::vector<std::string> v{"A", "B", "x", "y"};
    return v;
}

const RationalFn& R_expr() {
    static const RationalFn r = [] {
        const auto& vs = abxy_vars();
        const MultiPoly A = var(vs, "A"), B = var(vs, "B");
        const MultiPoly x = var(vs, "x"), y = var(vs, "y");
        const MultiPoly core = B - A * B * B * y + A * A * x * y;
        const MultiPoly num = x * (x - y) * core * core;
        const MultiPoly den = (x - B * B * B * y) * (B * B - A * x + A * A * B * x * y);
        return RationalFn(num, den, /*reduce=*/false);
    }();
    return r;
}

const RationalFn& T_expr() {
    static const RationalFn t = [] {
        const auto& vs = abxy_vars();
        const MultiPoly A = var(vs, "A"), B = var(vs, "B");
        const MultiPoly x = var(vs, "x"), y = var(vs, "y");
        const MultiPoly core = x * (x - y) + A * B - A * x;
        const MultiPoly num = core * core * y * (x - y);
        const MultiPoly den =
            A * (B * (x - y) - A * x) * (A * B + x * (x - y) - B * (x - y));
        return RationalFn(num, den, /*reduce=*/false);
    }();
    return t;
}

const MultiPoly& R_ideal() {
    static const MultiPoly g = [] {
        const auto& vs = abxy_vars();
        const MultiPoly A = var(vs, "A"), B = var(vs, "B");
        const MultiPoly x = var(vs, "x"), y = var(vs, "y");
        return A * A * A * x * y * (x - y) + B * B * B -
               MultiPoly::constant(vs, Rational(1));
    }();
    return g;
}

const MultiPoly& T_ideal() {
    static const MultiPoly g = [] {
        const auto& vs = abxy_vars();
        const MultiPoly A = var(vs, "A"), B = var(vs, "B");
        const MultiPoly x = var(vs, "x"), y = var(vs, "y");
        return A * B * (A - B) - x * y * (x - y);
    }();
    return g;
}

const RationalFn& T1_expr() {
    static const RationalFn t = [] {
        const std::vector<std::string> vs{"B", "x", "y"};
        const MultiPoly one = MultiPoly::constant(vs, Rational(1));
        const RationalFn img_one = RationalFn::from_poly(one);
        const RationalFn B = RationalFn::variable(vs, "B");
        const RationalFn x = RationalFn::variable(vs, "x");
        const RationalFn y = RationalFn::variable(vs, "y");
        return T_expr().subst({img_one, B, x, y});
    }();
    return t;
}

const MultiPoly& E_ideal() {
    static const MultiPoly g = [] {
        const std::vector<std::string> vs{"B", "x", "y"};
        const MultiPoly B = var(vs, "B"), x = var(vs, "x"), y = var(vs, "y");
        return B * (MultiPoly::constant(vs, Rational(1)) - B) - x * y * (x - y);
    }();
    return g;
}

}  // namespace proflow
