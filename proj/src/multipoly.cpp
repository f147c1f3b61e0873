/* Sparse multivariate polynomial arithmetic, division and GCD. */

#include "proflow/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace proflow {

namespace {

int expo_total(const Expo& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Does a divide b componentwise (x^a | x^b)?
bool expo_divides(const Expo& a, const Expo& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Expo expo_sub(const Expo& a, const Expo& b) {
    Expo r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Expo expo_add(const Expo& a, const Expo& b) {
    Expo r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// Descending comparator so that map.begin() is the leading term.
struct ExpoGreater {
    MonomialOrder ord;
    bool operator()(const Expo& a, const Expo& b) const { return expo_less(b, a, ord); }
};

using OrderedTerms = std::map<Expo, Rational, ExpoGreater>;

OrderedTerms ordered_copy(const MultiPoly& p, MonomialOrder ord) {
    OrderedTerms m(ExpoGreater{ord});
    for (const auto& [e, c] : p.terms()) m.emplace(e, c);
    return m;
}

// w -= c * x^shift * g, maintaining the no-zero-coefficients invariant.
void sub_scaled_shifted(OrderedTerms& w, const MultiPoly& g, const Expo& shift,
                        const Rational& c) {
    for (const auto& [e, gc] : g.terms()) {
        Expo target = expo_add(e, shift);
        auto it = w.find(target);
        if (it == w.end()) {
            Rational nc = -(c * gc);
            if (!nc.is_zero()) w.emplace(std::move(target), std::move(nc));
        } else {
            it->second -= c * gc;
            if (it->second.is_zero()) w.erase(it);
        }
    }
}

}  // namespace

bool expo_less(const Expo& a, const Expo& b, MonomialOrder ord) {
    if (ord == MonomialOrder::GradedLex) {
        int da = expo_total(a), db = expo_total(b);
        if (da != db) return da < db;
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Rational& c) {
    MultiPoly p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(Expo(p.vars_.size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, const std::string& name) {
    MultiPoly p(std::move(vars));
    int idx = p.var_index(name);
    if (idx < 0) throw std::invalid_argument("MultiPoly: unknown variable " + name);
    Expo e(p.vars_.size(), 0);
    e[idx] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, Expo e, const Rational& c) {
    MultiPoly p(std::move(vars));
    if (e.size() != p.vars_.size())
        throw std::invalid_argument("MultiPoly: exponent arity mismatch");
    if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && expo_total(terms_.begin()->first) == 0);
}

int MultiPoly::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    return -1;
}

Rational MultiPoly::coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_term() const { return coeff(Expo(vars_.size(), 0)); }

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, expo_total(e));
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

std::optional<int> MultiPoly::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = expo_total(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (expo_total(e) != d) return std::nullopt;
    return d;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    if (vars_ != o.vars_)
        throw std::invalid_argument("MultiPoly: mixed variable universes");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, -c);
        } else {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.vars_);
    // Accumulate into the smaller-term operand's products map.
    const MultiPoly& outer = a.terms_.size() <= b.terms_.size() ? a : b;
    const MultiPoly& inner = a.terms_.size() <= b.terms_.size() ? b : a;
    for (const auto& [ea, ca] : outer.terms_) {
        for (const auto& [eb, cb] : inner.terms_) {
            Expo e = expo_add(ea, eb);
            Rational c = ca * cb;
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                if (!c.is_zero()) r.terms_.emplace(std::move(e), std::move(c));
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    MultiPoly r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

MultiPoly MultiPoly::mono_multiple(const Expo& e, const Rational& c) const {
    MultiPoly r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [te, tc] : terms_) r.terms_.emplace(expo_add(te, e), tc * c);
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(vars_, Rational(1));
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return r;
}

MultiPoly MultiPoly::derivative(int var) const {
    if (var < 0 || var >= static_cast<int>(vars_.size()))
        throw std::invalid_argument("MultiPoly: unknown variable index");
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Expo ne = e;
        ne[var] -= 1;
        r.terms_.emplace(std::move(ne), c * Rational(e[var]));
    }
    return r;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
    int idx = var_index(var);
    if (idx < 0) throw std::invalid_argument("MultiPoly: unknown variable " + var);
    return derivative(idx);
}

MultiPoly MultiPoly::subst(const std::vector<MultiPoly>& images) const {
    if (images.size() != vars_.size())
        throw std::invalid_argument("MultiPoly::subst: wrong image arity");
    std::vector<std::string> target =
        images.empty() ? vars_ : images.front().vars();
    std::vector<std::vector<MultiPoly>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        powers[i] = {MultiPoly::constant(target, Rational(1))};
    MultiPoly acc(target);
    for (const auto& [e, c] : terms_) {
        MultiPoly term = MultiPoly::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            auto& pw = powers[i];
            while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
            if (e[i] > 0) term = term * pw[e[i]];
        }
        acc += term;
    }
    return acc;
}

std::pair<Expo, Rational> MultiPoly::leading_term(MonomialOrder ord) const {
    if (terms_.empty()) throw std::domain_error("MultiPoly: leading term of zero");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (expo_less(best->first, it->first, ord)) best = it;
    return {best->first, best->second};
}

void MultiPoly::set_coeff(const Expo& e, const Rational& c) {
    if (e.size() != vars_.size())
        throw std::invalid_argument("MultiPoly: exponent arity mismatch");
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

std::string MultiPoly::to_string(MonomialOrder ord) const {
    if (terms_.empty()) return "0";
    OrderedTerms sorted = ordered_copy(*this, ord);
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : sorted) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) os << "*" << vars_[i] << "^" << e[i];
    }
    return os.str();
}

std::optional<MultiPoly> exact_divide(const MultiPoly& f, const MultiPoly& g) {
    if (g.is_zero()) throw std::domain_error("exact_divide: zero divisor");
    MultiPoly q(f.vars());
    if (f.is_zero()) return q;
    if (f.vars() != g.vars())
        throw std::invalid_argument("exact_divide: mixed variable universes");
    const MonomialOrder ord = MonomialOrder::GradedLex;
    auto [ge, gc] = g.leading_term(ord);
    OrderedTerms w = ordered_copy(f, ord);
    while (!w.empty()) {
        const auto& [we, wc] = *w.begin();
        // Strict divisibility test at every step: once a leading term fails,
        // it would survive in the remainder, so g cannot divide f.
        if (!expo_divides(ge, we)) return std::nullopt;
        Expo shift = expo_sub(we, ge);
        Rational c = wc / gc;
        q.set_coeff(shift, c);
        sub_scaled_shifted(w, g, shift, c);
    }
    return q;
}

MultiPoly reduce_modulo(const MultiPoly& f, const MultiPoly& g, MonomialOrder ord) {
    if (g.is_zero()) throw std::domain_error("reduce_modulo: zero divisor");
    if (f.is_zero()) return f;
    if (f.vars() != g.vars())
        throw std::invalid_argument("reduce_modulo: mixed variable universes");
    auto [ge, gc] = g.leading_term(ord);
    OrderedTerms w = ordered_copy(f, ord);
    MultiPoly rem(f.vars());
    while (!w.empty()) {
        auto it = w.begin();
        const Expo we = it->first;
        const Rational wc = it->second;
        if (expo_divides(ge, we)) {
            sub_scaled_shifted(w, g, expo_sub(we, ge), wc / gc);
        } else {
            rem.set_coeff(we, wc);
            w.erase(it);
        }
    }
    return rem;
}

// ---------------------------------------------------------------------------
// Multivariate GCD: content/primitive-part recursion over the last active
// variable, primitive pseudo-remainder sequence for the univariate step.

namespace {

// View p as univariate in variable `v`: coefficient polynomials (over the
// full universe, with zero exponent at v) indexed by degree.
std::vector<MultiPoly> collect_univariate(const MultiPoly& p, int v) {
    int d = p.degree_in(v);
    std::vector<MultiPoly> coeffs(static_cast<std::size_t>(d + 1), MultiPoly(p.vars()));
    for (const auto& [e, c] : p.terms()) {
        Expo re = e;
        int k = re[v];
        re[v] = 0;
        coeffs[k].set_coeff(re, c);
    }
    return coeffs;
}

MultiPoly from_univariate(const std::vector<MultiPoly>& coeffs, int v,
                          const std::vector<std::string>& vars) {
    MultiPoly r(vars);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        Expo shift(vars.size(), 0);
        shift[v] = static_cast<int>(k);
        r += coeffs[k].mono_multiple(shift, Rational(1));
    }
    return r;
}

// Rational content: positive rational c such that p/c has coprime integer
// coefficients; sign chosen so that p/c has positive graded-lex leading coeff.
Rational scalar_content(const MultiPoly& p) {
    if (p.is_zero()) return Rational(1);
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : p.terms()) {
        mpz_class n = c.numerator();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        mpz_class d = c.denominator();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    Rational content(mpq_class(num_gcd, den_lcm));
    if (p.leading_term(MonomialOrder::GradedLex).second.sign() < 0)
        content = -content;
    return content;
}

MultiPoly scalar_normalize(const MultiPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(Rational(1) / scalar_content(p));
}

int last_active_var(const MultiPoly& f, const MultiPoly& g) {
    for (int v = static_cast<int>(f.vars().size()) - 1; v >= 0; --v)
        if (f.degree_in(v) > 0 || g.degree_in(v) > 0) return v;
    return -1;
}

// Pseudo-remainder of univariate views a, b (deg a >= deg b >= 0).
std::vector<MultiPoly> pseudo_rem(std::vector<MultiPoly> a,
                                  const std::vector<MultiPoly>& b) {
    const MultiPoly& lb = b.back();
    int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        int da = static_cast<int>(a.size()) - 1;
        if (a.back().is_zero()) {
            a.pop_back();
            continue;
        }
        MultiPoly la = a.back();
        // a := lb*a - la * x^(da-db) * b
        for (auto& c : a) c = c * lb;
        for (int k = 0; k <= db; ++k) a[k + da - db] -= la * b[k];
        while (!a.empty() && a.back().is_zero()) a.pop_back();
    }
    return a;
}

MultiPoly content_of_coeffs(const std::vector<MultiPoly>& coeffs) {
    MultiPoly c(coeffs.empty() ? std::vector<std::string>{} : coeffs.front().vars());
    for (const auto& co : coeffs) {
        if (co.is_zero()) continue;
        c = c.is_zero() ? co : poly_gcd(c, co);
        if (c.is_constant() && !c.is_zero()) break;
    }
    return c;
}

// One rational rescale across the whole univariate view (a per-coefficient
// rescale would change coefficient ratios and corrupt the polynomial).
void scalar_normalize_view(std::vector<MultiPoly>& coeffs) {
    Rational cont(0);
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& co : coeffs)
        for (const auto& [e, c] : co.terms()) {
            mpz_class n = c.numerator();
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
            mpz_class d = c.denominator();
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        }
    if (num_gcd == 0) return;
    Rational scale(mpq_class(den_lcm, num_gcd));
    for (auto& co : coeffs) co = co.scaled(scale);
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g) {
    if (f.is_zero()) return scalar_normalize(g);
    if (g.is_zero()) return scalar_normalize(f);
    if (f.vars() != g.vars())
        throw std::invalid_argument("poly_gcd: mixed variable universes");
    int v = last_active_var(f, g);
    if (v < 0) return MultiPoly::constant(f.vars(), Rational(1));

    // Univariate in v over the ring of polynomials in the remaining variables.
    auto fa = collect_univariate(scalar_normalize(f), v);
    auto fb = collect_univariate(scalar_normalize(g), v);
    MultiPoly cf = content_of_coeffs(fa);
    MultiPoly cg = content_of_coeffs(fb);
    MultiPoly cont = poly_gcd(cf, cg);

    auto strip = [](std::vector<MultiPoly>& c, const MultiPoly& divisor) {
        for (auto& co : c) {
            if (co.is_zero()) continue;
            auto q = exact_divide(co, divisor);
            if (!q) throw std::logic_error("poly_gcd: content division failed");
            co = *q;
        }
    };
    strip(fa, cf);
    strip(fb, cg);

    // Primitive pseudo-remainder sequence.
    if (fa.size() < fb.size()) fa.swap(fb);
    while (!fb.empty()) {
        auto r = pseudo_rem(fa, fb);
        fa.swap(fb);
        fb = std::move(r);
        if (fb.empty()) break;
        // Primitive part: strip the content to stop coefficient blowup.
        MultiPoly cr = content_of_coeffs(fb);
        if (!(cr.is_constant() && cr.constant_term().is_one())) strip(fb, cr);
        scalar_normalize_view(fb);
    }
    MultiPoly prim = from_univariate(fa, v, f.vars());
    return scalar_normalize(cont * scalar_normalize(prim));
}

}  // namespace proflow
