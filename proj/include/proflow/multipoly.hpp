/* Sparse multivariate polynomials over exact rationals.
 *
 * Terms are keyed by exponent vectors over a fixed, ordered variable
 * universe.  Two monomial orders are supported (graded lex, pure lex);
 * graded lex is the default everywhere.  Division by a single divisor
 * doubles as an ideal-membership test: one polynomial is a Groebner
 * basis of the principal ideal it generates, so the remainder is zero
 * exactly when the dividend lies in the ideal.
 */
#pragma once

#include "proflow/rational.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace proflow {

enum class MonomialOrder { GradedLex, Lex };

using Expo = std::vector<int>;

// true when a precedes b (a is smaller) under the given order.
bool expo_less(const Expo& a, const Expo& b, MonomialOrder ord);

class MultiPoly {
public:
    using TermMap = std::map<Expo, Rational>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(std::vector<std::string> vars, const Rational& c);
    static MultiPoly variable(std::vector<std::string> vars, const std::string& name);
    static MultiPoly monomial(std::vector<std::string> vars, Expo e, const Rational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t term_count() const { return terms_.size(); }

    int var_index(const std::string& name) const;  // -1 when absent

    Rational coeff(const Expo& e) const;
    Rational constant_term() const;

    // Max total degree over terms; -1 for the zero polynomial.
    int total_degree() const;
    // Max exponent of one variable; -1 for the zero polynomial.
    int degree_in(int var) const;

    // All terms share one total degree -> that degree; empty otherwise.
    std::optional<int> homogeneous_degree() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly scaled(const Rational& c) const;
    MultiPoly mono_multiple(const Expo& e, const Rational& c) const;  // c * x^e * this
    MultiPoly pow(unsigned e) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly derivative(const std::string& var) const;
    MultiPoly derivative(int var) const;

    // Substitute one polynomial per variable (images share a universe).
    MultiPoly subst(const std::vector<MultiPoly>& images) const;

    // Leading term under the order; polynomial must be nonzero.
    std::pair<Expo, Rational> leading_term(MonomialOrder ord) const;

    template <typename T>
    T eval(const std::vector<T>& point) const;

    std::string to_string(MonomialOrder ord = MonomialOrder::GradedLex) const;

    void set_coeff(const Expo& e, const Rational& c);

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    void check_compatible(const MultiPoly& o) const;
};

// Quotient q with f = q*g when g divides f exactly; empty otherwise.
std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g);

// Remainder of multivariate division of f by the single divisor g.
MultiPoly reduce_modulo(const MultiPoly& f, const MultiPoly& g,
                        MonomialOrder ord = MonomialOrder::GradedLex);

// Multivariate GCD (content / primitive-part recursion with a primitive
// pseudo-remainder sequence).  Result has integer coefficients with content
// one and positive leading coefficient under graded lex.
MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g);

template <typename T>
T rational_cast(const Rational& r);

template <>
inline double rational_cast<double>(const Rational& r) { return r.to_double(); }
template <>
inline std::complex<double> rational_cast<std::complex<double>>(const Rational& r) {
    return {r.to_double(), 0.0};
}
template <>
inline Rational rational_cast<Rational>(const Rational& r) { return r; }

template <typename T>
T MultiPoly::eval(const std::vector<T>& point) const {
    if (point.size() != vars_.size())
        throw std::invalid_argument("MultiPoly::eval: wrong point arity");
    // Per-variable power cache keeps repeated exponents cheap.
    std::vector<std::vector<T>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) powers[i] = {T(1)};
    T acc = T(0);
    for (const auto& [e, c] : terms_) {
        T term = rational_cast<T>(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            auto& pw = powers[i];
            while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * point[i]);
            if (e[i] > 0) term = term * pw[e[i]];
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace proflow
