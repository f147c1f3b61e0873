/* Rational functions num/den over MultiPoly with automatic reduction.
 *
 * Normal form: gcd(num, den) is a unit, den has coprime integer
 * coefficients with positive graded-lex leading coefficient.  A raw
 * (unreduced) constructor exists for identity pipelines where only the
 * numerator's ideal membership matters and GCDs of huge intermediate
 * polynomials would be wasted work.
 */
#pragma once

#include "proflow/multipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace proflow {

class RationalFn {
public:
    RationalFn() = default;
    RationalFn(MultiPoly num, MultiPoly den, bool reduce = true);
    static RationalFn from_poly(MultiPoly p);
    static RationalFn constant(std::vector<std::string> vars, const Rational& c);
    static RationalFn variable(std::vector<std::string> vars, const std::string& name);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    const std::vector<std::string>& vars() const { return num_.vars(); }
    bool is_zero() const { return num_.is_zero(); }

    RationalFn operator-() const;
    friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
    RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
    RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
    RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
    RationalFn& operator/=(const RationalFn& o) { return *this = *this / o; }
    RationalFn pow(int e) const;

    // Mathematical equality via cross-multiplication (works on raw forms too).
    bool equals(const RationalFn& o) const;
    friend bool operator==(const RationalFn& a, const RationalFn& b) { return a.equals(b); }

    RationalFn derivative(const std::string& var) const;
    RationalFn subst(const std::vector<RationalFn>& images) const;

    std::optional<int> homogeneous_degree() const;

    template <typename T>
    T eval(const std::vector<T>& point) const {
        T d = den_.eval<T>(point);
        if (d == T(0)) throw std::domain_error("RationalFn::eval: denominator vanishes");
        return num_.eval<T>(point) / d;
    }

    std::string to_string(MonomialOrder ord = MonomialOrder::GradedLex) const;

private:
    MultiPoly num_;
    MultiPoly den_;

    void normalize(bool reduce);
};

// Spec-facing helpers mirroring the exact-arithmetic operation set.
RationalFn partial_derivative(const RationalFn& f, const std::string& var);
std::optional<int> is_homogeneous(const RationalFn& f);

}  // namespace proflow
