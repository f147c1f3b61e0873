/* Exact rational scalar backed by GMP's mpq_class.
 *
 * Canonical form: gcd(|num|, den) = 1, den > 0 (mpq canonicalization).
 * Text form is "num/den", or just "num" when den = 1.
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace proflow {

class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(long n, long d) : q_(n, d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : q_(n) {}
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    // Accepts "num", "num/den", with optional sign.
    explicit Rational(const std::string& text) : q_(text) {
        if (q_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }

    const mpq_class& raw() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    // Integer power; negative exponents invert (error on zero base).
    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (is_zero()) {
            if (e < 0) throw std::domain_error("Rational: 0^negative");
            return Rational(0);
        }
        mpz_class n, d;
        unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
        mpz_pow_ui(n.get_mpz_t(), q_.get_num().get_mpz_t(), ae);
        mpz_pow_ui(d.get_mpz_t(), q_.get_den().get_mpz_t(), ae);
        mpq_class r;
        if (e > 0) r = mpq_class(n, d);
        else r = mpq_class(d, n);
        r.canonicalize();
        return Rational(r);
    }

    double to_double() const { return q_.get_d(); }

    std::string to_string() const { return q_.get_str(); }

    // Decimal digit count of the denominator (guards against series blowup).
    std::size_t denominator_digits() const {
        return mpz_sizeinbase(q_.get_den().get_mpz_t(), 10);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.q_.get_str();
    }

private:
    mpq_class q_;
};

}  // namespace proflow

template <>
struct std::hash<proflow::Rational> {
    std::size_t operator()(const proflow::Rational& r) const {
        // Cheap limb-based mix; exact values at play are small enough that
        // string round-trips would also work, this just avoids allocation.
        const mpq_class& q = r.raw();
        std::size_t h = std::hash<long>()(mpz_get_si(mpq_numref(q.get_mpq_t())));
        std::size_t g = std::hash<long>()(mpz_get_si(mpq_denref(q.get_mpq_t())));
        return h ^ (g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};
