/* RationalFn arithmetic and normalization. */

#include "proflow/rationalfn.hpp"

#include <stdexcept>

namespace proflow {

namespace {

// Positive rational c with p/c integer-primitive; sign makes leading
// graded-lex coefficient positive.
Rational denominator_scale(const MultiPoly& p) {
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : p.terms()) {
        mpz_class n = c.numerator();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        mpz_class d = c.denominator();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    Rational scale(mpq_class(num_gcd, den_lcm));
    if (p.leading_term(MonomialOrder::GradedLex).second.sign() < 0) scale = -scale;
    return scale;
}

}  // namespace

RationalFn::RationalFn(MultiPoly num, MultiPoly den, bool reduce)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RationalFn: zero denominator");
    if (num_.vars() != den_.vars())
        throw std::invalid_argument("RationalFn: mixed variable universes");
    normalize(reduce);
}

void RationalFn::normalize(bool reduce) {
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(den_.vars(), Rational(1));
        return;
    }
    if (reduce && !den_.is_constant()) {
        MultiPoly g = poly_gcd(num_, den_);
        if (!(g.is_constant())) {
            auto qn = exact_divide(num_, g);
            auto qd = exact_divide(den_, g);
            if (!qn || !qd) throw std::logic_error("RationalFn: gcd does not divide");
            num_ = std::move(*qn);
            den_ = std::move(*qd);
        }
    }
    Rational scale = denominator_scale(den_);
    Rational inv = Rational(1) / scale;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
}

RationalFn RationalFn::from_poly(MultiPoly p) {
    auto vars = p.vars();
    return RationalFn(std::move(p), MultiPoly::constant(vars, Rational(1)), false);
}

RationalFn RationalFn::constant(std::vector<std::string> vars, const Rational& c) {
    return from_poly(MultiPoly::constant(std::move(vars), c));
}

RationalFn RationalFn::variable(std::vector<std::string> vars, const std::string& name) {
    return from_poly(MultiPoly::variable(std::move(vars), name));
}

RationalFn RationalFn::operator-() const {
    RationalFn r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.is_zero()) throw std::domain_error("RationalFn: division by zero");
    return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFn RationalFn::pow(int e) const {
    if (e == 0) return constant(vars(), Rational(1));
    if (is_zero()) {
        if (e < 0) throw std::domain_error("RationalFn: 0^negative");
        return *this;
    }
    unsigned ae = static_cast<unsigned>(e < 0 ? -e : e);
    RationalFn r;
    r.num_ = num_.pow(ae);
    r.den_ = den_.pow(ae);
    if (e < 0) std::swap(r.num_, r.den_);
    return RationalFn(std::move(r.num_), std::move(r.den_), false);
}

bool RationalFn::equals(const RationalFn& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

RationalFn RationalFn::derivative(const std::string& var) const {
    if (num_.var_index(var) < 0)
        throw std::invalid_argument("RationalFn: unknown variable " + var);
    // (u/v)' = (u'v - uv') / v^2
    MultiPoly du = num_.derivative(var);
    MultiPoly dv = den_.derivative(var);
    return RationalFn(du * den_ - num_ * dv, den_ * den_);
}

RationalFn RationalFn::subst(const std::vector<RationalFn>& images) const {
    if (images.size() != vars().size())
        throw std::invalid_argument("RationalFn::subst: wrong image arity");
    auto eval_poly = [&](const MultiPoly& p) {
        std::vector<std::string> target = images.front().vars();
        std::vector<std::vector<RationalFn>> powers(images.size());
        for (std::size_t i = 0; i < images.size(); ++i)
            powers[i] = {RationalFn::constant(target, Rational(1))};
        RationalFn acc = RationalFn::constant(target, Rational(0));
        for (const auto& [e, c] : p.terms()) {
            RationalFn term = RationalFn::constant(target, c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                auto& pw = powers[i];
                while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
                if (e[i] > 0) term = term * pw[e[i]];
            }
            acc = acc + term;
        }
        return acc;
    };
    return eval_poly(num_) / eval_poly(den_);
}

std::optional<int> RationalFn::homogeneous_degree() const {
    if (is_zero()) throw std::domain_error("homogeneous_degree: zero function");
    auto dn = num_.homogeneous_degree();
    auto dd = den_.homogeneous_degree();
    if (!dn || !dd) return std::nullopt;
    return *dn - *dd;
}

std::string RationalFn::to_string(MonomialOrder ord) const {
    if (den_.is_constant() && den_.constant_term().is_one()) return num_.to_string(ord);
    return "(" + num_.to_string(ord) + ") / (" + den_.to_string(ord) + ")";
}

RationalFn partial_derivative(const RationalFn& f, const std::string& var) {
    return f.derivative(var);
}

std::optional<int> is_homogeneous(const RationalFn& f) {
    return f.homogeneous_degree();
}

}  // namespace proflow
