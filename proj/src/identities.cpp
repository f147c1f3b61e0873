#include "proflow/identities.hpp"

#include "proflow/exprs.hpp"

#include <cstdlib>
#include <random>
#include <stdexcept>

namespace proflow {

namespace {

RationalFn var_fn(const std::vector<std::string>& vars,
                  const std::string& name) {
    return RationalFn::variable(vars, name);
}

// Numerator of the partial derivative over the common denominator den^2.
MultiPoly deriv_num(const RationalFn& f, const std::string& v) {
    return f.num().derivative(v) * f.den() - f.num() * f.den().derivative(v);
}

RationalFn unreduced_mul(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num() * b.num(), a.den() * b.den(), false);
}

std::vector<std::string> n_vars(int N) {
    if (N == 2) return {"x", "y"};
    if (N == 3) return {"x", "y", "z"};
    std::vector<std::string> v;
    for (int i = 1; i <= N; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

RatMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    RatMatrix m;
    for (const auto& row : rows) {
        m.emplace_back();
        for (long e : row) m.back().emplace_back(e);
    }
    return m;
}

}  // namespace

RationalFn unreduced_sum(const std::vector<RationalFn>& terms) {
    if (terms.empty()) throw std::invalid_argument("unreduced_sum: no terms");
    MultiPoly num = terms.front().num();
    MultiPoly den = terms.front().den();
    for (std::size_t i = 1; i < terms.size(); ++i) {
        num = num * terms[i].den() + terms[i].num() * den;
        den = den * terms[i].den();
    }
    return RationalFn(std::move(num), std::move(den), false);
}

QuotientCheck check_quotient(std::string name, const RationalFn& lhs,
                             const MultiPoly& modulus) {
    if (modulus.is_zero()) {
        throw std::invalid_argument("check_quotient: zero modulus");
    }
    QuotientCheck out;
    out.name = std::move(name);
    out.lhs = lhs;
    out.modulus = modulus;
    out.certificate = MultiPoly(modulus.vars());
    out.plain_zero = lhs.num().is_zero();

    const bool den_outside = !reduce_modulo(lhs.den(), modulus).is_zero();
    if (out.plain_zero) {
        out.verdict = den_outside;
        return out;
    }
    if (auto q = exact_divide(lhs.num(), modulus)) {
        out.certificate = *q;
        out.verdict = den_outside;
    }
    return out;
}

QuotientCheck symm_identity_1() {
    const auto& V = abxy_vars();
    const RationalFn A = var_fn(V, "A"), B = var_fn(V, "B");
    const RationalFn x = var_fn(V, "x"), y = var_fn(V, "y");
    const RationalFn& R = R_expr();
    const RationalFn lhs = unreduced_sum({
        R,
        R.subst({A, B, -y, x - y}),
        R.subst({A, B, y - x, -x}),
    });
    return check_quotient("symm1", lhs, R_ideal());
}

QuotientCheck symm_identity_2() {
    const auto& V = abxy_vars();
    const RationalFn A = var_fn(V, "A"), B = var_fn(V, "B");
    const RationalFn x = var_fn(V, "x"), y = var_fn(V, "y");
    const RationalFn one = RationalFn::constant(V, Rational(1));
    const RationalFn& R = R_expr();
    const RationalFn lhs = unreduced_sum({
        R,
        R.subst({A / B, one / B, -x, y - x}),
    });
    return check_quotient("symm2", lhs, R_ideal());
}

QuotientCheck quaq_check() {
    const auto& V = abxy_vars();
    const MultiPoly A = MultiPoly::variable(V, "A");
    const MultiPoly B = MultiPoly::variable(V, "B");
    const MultiPoly x = MultiPoly::variable(V, "x");
    const MultiPoly y = MultiPoly::variable(V, "y");
    const MultiPoly two = MultiPoly::constant(V, Rational(2));
    const RationalFn& T = T_expr();

    const MultiPoly num = deriv_num(T, "A") * (A * A - two * A * B) +
                          deriv_num(T, "B") * (B * B - two * A * B) +
                          deriv_num(T, "x") * (x * x - two * x * y) +
                          deriv_num(T, "y") * (y * y - two * x * y);
    const RationalFn lhs(num, T.den() * T.den(), false);
    return check_quotient("quaq", lhs, T_ideal());
}

QuotientCheck tfun_check() {
    const std::vector<std::string> V = {"B", "x", "y"};
    const MultiPoly B = MultiPoly::variable(V, "B");
    const MultiPoly x = MultiPoly::variable(V, "x");
    const MultiPoly y = MultiPoly::variable(V, "y");
    const MultiPoly one = MultiPoly::constant(V, Rational(1));
    const MultiPoly two = MultiPoly::constant(V, Rational(2));
    const MultiPoly three = MultiPoly::constant(V, Rational(3));
    const RationalFn& G = T1_expr();

    const MultiPoly num =
        deriv_num(G, "B") * (three * B * B - three * B) +
        deriv_num(G, "x") * (x * x - two * x * y - x + two * B * x) +
        deriv_num(G, "y") * (y * y - two * x * y - y + two * B * y) -
        (two * B - one) * G.num() * G.den();
    const RationalFn lhs(num, G.den() * G.den(), false);
    return check_quotient("tfun", lhs, E_ideal());
}

QuotientCheck sqrt_identity_check() {
    const std::vector<std::string> V = {"B", "x", "y"};
    const MultiPoly B = MultiPoly::variable(V, "B");
    const MultiPoly x = MultiPoly::variable(V, "x");
    const MultiPoly y = MultiPoly::variable(V, "y");
    const MultiPoly one = MultiPoly::constant(V, Rational(1));
    const MultiPoly two = MultiPoly::constant(V, Rational(2));
    const MultiPoly three = MultiPoly::constant(V, Rational(3));
    const MultiPoly four = MultiPoly::constant(V, Rational(4));
    const RationalFn& G = T1_expr();

    const MultiPoly gx = deriv_num(G, "x");
    const MultiPoly gy = deriv_num(G, "y");
    const MultiPoly gB = deriv_num(G, "B");
    const MultiPoly radicand = one - four * x * y * (x - y);

    // N = [gx (x^2-2xy) + gy (y^2-2xy)] / den^2
    const MultiPoly nN = gx * (x * x - two * x * y) + gy * (y * y - two * x * y);
    // D = [(num den - x gx - y gy)(1-2B) - 3xy(x-y) gB] / [den^2 (1-2B)]
    const MultiPoly nD = (G.num() * G.den() - x * gx - y * gy) * (one - two * B) -
                          three * x * y * (x - y) * gB;
    // N^2 - radicand D^2 over the common denominator den^4 (1-2B)^2.
    const MultiPoly num = nN * nN * (one - two * B) * (one - two * B) -
                          radicand * nD * nD;
    const MultiPoly den2 = G.den() * G.den();
    const RationalFn lhs(num, den2 * den2 * (one - two * B) * (one - two * B),
                         false);
    return check_quotient("sqrt", lhs, E_ideal());
}

std::vector<QuotientCheck> all_quotient_checks() {
    return {symm_identity_1(), symm_identity_2(), quaq_check(), tfun_check(),
            sqrt_identity_check()};
}

RatMatrix mat_identity(int n) {
    RatMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = Rational(1);
    return m;
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() != a[0].size()) {
        throw std::invalid_argument("mat_mul: shape mismatch");
    }
    const std::size_t p = b[0].size();
    RatMatrix out(n, std::vector<Rational>(p, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < p; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

RatMatrix mat_inverse(const RatMatrix& m) {
    const std::size_t n = m.size();
    RatMatrix a = m;
    RatMatrix inv = mat_identity(static_cast<int>(n));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::invalid_argument("mat_inverse: singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const Rational lead = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= lead;
            inv[col][j] /= lead;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

std::vector<MultiPoly> superflow_Q1(int N) {
    if (N < 2) throw std::invalid_argument("superflow_Q1: N >= 2 required");
    const auto V = n_vars(N);
    std::vector<MultiPoly> forms;
    for (int i = 0; i < N; ++i) {
        // Q_{i+1} = Q_1 with coordinates 1 and i+1 swapped.
        MultiPoly xi = MultiPoly::variable(V, V[i]);
        MultiPoly rest(V);
        for (int j = 0; j < N; ++j) {
            if (j != i) rest += MultiPoly::variable(V, V[j]);
        }
        forms.push_back(xi * xi - (xi * rest).scaled(Rational(2, N - 1)));
    }
    return forms;
}

bool superflow_invariance(const std::vector<RationalFn>& Q,
                          const GroupRep& G) {
    const std::size_t n = Q.size();
    if (n == 0 || static_cast<std::size_t>(G.dimension) != n) {
        throw std::invalid_argument("superflow_invariance: dimension mismatch");
    }
    const auto& V = Q.front().vars();
    if (V.size() != n) {
        throw std::invalid_argument("superflow_invariance: variable mismatch");
    }
    for (const RatMatrix& g : G.generators) {
        if (g.size() != n) {
            throw std::invalid_argument(
                "superflow_invariance: generator shape mismatch");
        }
        // images of the variables under gamma
        std::vector<RationalFn> images;
        for (std::size_t i = 0; i < n; ++i) {
            RationalFn row = RationalFn::constant(V, Rational(0));
            for (std::size_t j = 0; j < n; ++j) {
                if (g[i][j].is_zero()) continue;
                row += RationalFn::constant(V, g[i][j]) * var_fn(V, V[j]);
            }
            images.push_back(row);
        }
        const RatMatrix inv = mat_inverse(g);
        for (std::size_t i = 0; i < n; ++i) {
            RationalFn conj = RationalFn::constant(V, Rational(0));
            for (std::size_t j = 0; j < n; ++j) {
                if (inv[i][j].is_zero()) continue;
                conj += RationalFn::constant(V, inv[i][j]) *
                        Q[j].subst(images);
            }
            if (!conj.equals(Q[i])) return false;
        }
    }
    return true;
}

bool superflow_invariance_words(const std::vector<RationalFn>& Q,
                                const GroupRep& G, int words, int length,
                                unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0,
                                                    G.generators.size() - 1);
    for (int w = 0; w < words; ++w) {
        RatMatrix m = mat_identity(G.dimension);
        for (int s = 0; s < length; ++s) m = mat_mul(m, G.generators[pick(rng)]);
        GroupRep single{{m}, G.dimension};
        if (!superflow_invariance(Q, single)) return false;
    }
    return true;
}

GroupRep six_fold_group() {
    return {{int_matrix({{0, 1}, {1, 0}}), int_matrix({{1, -1}, {0, -1}})}, 2};
}

GroupRep a4_pelican_group() {
    return {{int_matrix({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}),
             int_matrix({{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}}),
             int_matrix({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}),
             int_matrix({{0, -1, 0}, {0, 0, 1}, {-1, 0, 0}})},
            3};
}

GroupRep sigma4_prime_group() {
    return {{int_matrix({{0, 1, 0}, {1, 0, 0}, {0, 0, -1}}),
             int_matrix({{0, 0, 1}, {0, -1, 0}, {1, 0, 0}}),
             int_matrix({{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})},
            3};
}

std::vector<RationalFn> pelican_field() {
    const std::vector<std::string> V = {"x", "y", "z"};
    const RationalFn x = var_fn(V, "x"), y = var_fn(V, "y"), z = var_fn(V, "z");
    return {y * z, x * z, x * y};
}

std::vector<RationalFn> sigma4_prime_field() {
    const std::vector<std::string> V = {"x", "y", "z"};
    const RationalFn x = var_fn(V, "x"), y = var_fn(V, "y"), z = var_fn(V, "z");
    const RationalFn den = x * x + y * y + z * z;
    return {(y * y * y * z - y * z * z * z) / den,
            (z * z * z * x - z * x * x * x) / den,
            (x * x * x * y - x * y * y * y) / den};
}

bool sigma4prime_field_check() {
    return superflow_invariance(sigma4_prime_field(), sigma4_prime_group());
}

QuotientCheck quasi_flow_pre_check(const QuasiFlowData& d) {
    const auto& V = abxy_vars();
    const MultiPoly A = MultiPoly::variable(V, "A");
    const MultiPoly B = MultiPoly::variable(V, "B");
    const MultiPoly x = MultiPoly::variable(V, "x");
    const MultiPoly y = MultiPoly::variable(V, "y");

    const MultiPoly modulus =
        d.P.subst({A, B}) * d.Q.subst({x, y}) -
        d.P.subst({x, y}) * d.Q.subst({A, B});
    if (modulus.is_zero()) {
        throw std::invalid_argument("quasi_flow_pre_check: zero modulus");
    }

    const RationalFn wAB(d.w.num().subst({A, B}), d.w.den().subst({A, B}),
                         false);
    const RationalFn rAB(d.r.num().subst({A, B}), d.r.den().subst({A, B}),
                         false);
    const RationalFn wxy(d.w.num().subst({x, y}), d.w.den().subst({x, y}),
                         false);
    const RationalFn rxy(d.r.num().subst({x, y}), d.r.den().subst({x, y}),
                         false);

    const MultiPoly den2 = d.U.den() * d.U.den();
    const RationalFn lhs = unreduced_sum({
        unreduced_mul(RationalFn(deriv_num(d.U, "A"), den2, false), wAB),
        unreduced_mul(RationalFn(deriv_num(d.U, "B"), den2, false), rAB),
        unreduced_mul(RationalFn(deriv_num(d.U, "x"), den2, false), wxy),
        unreduced_mul(RationalFn(deriv_num(d.U, "y"), den2, false), rxy),
    });

    QuotientCheck out = check_quotient("quasi", lhs, modulus);
    const auto deg = d.U.homogeneous_degree();
    if (!deg || *deg != 1) out.verdict = false;
    return out;
}

namespace {

QuasiFlowData phi_n_quasi_base(int N) {
    if (N < 2) throw std::invalid_argument("phi_n quasi data: N >= 2");
    const std::vector<std::string> XY = {"x", "y"};
    const MultiPoly px = MultiPoly::variable(XY, "x");
    const MultiPoly py = MultiPoly::variable(XY, "y");
    QuasiFlowData d;
    d.w = RationalFn::from_poly((px * py).scaled(Rational(N - 1)));
    d.r = RationalFn::from_poly(-(py * py));
    d.P = px * py.pow(static_cast<unsigned>(N - 1));
    d.Q = MultiPoly::constant(XY, Rational(1));
    return d;
}

}  // namespace

QuasiFlowData phi_n_quasi_U(int N) {
    QuasiFlowData d = phi_n_quasi_base(N);
    const auto& V = abxy_vars();
    const RationalFn A = var_fn(V, "A"), B = var_fn(V, "B");
    const RationalFn y = var_fn(V, "y");
    d.U = -A * ((y - B) / y).pow(N - 1);
    return d;
}

QuasiFlowData phi_n_quasi_U_hat(int N) {
    QuasiFlowData d = phi_n_quasi_base(N);
    const auto& V = abxy_vars();
    const RationalFn B = var_fn(V, "B");
    const RationalFn x = var_fn(V, "x"), y = var_fn(V, "y");
    d.U = x * ((B - y) / B).pow(N - 1);
    return d;
}

QuasiFlowData phi_n_quasi_V(int N) {
    QuasiFlowData d = phi_n_quasi_base(N);
    const auto& V = abxy_vars();
    const RationalFn B = var_fn(V, "B");
    const RationalFn y = var_fn(V, "y");
    d.U = y * B / (B - y);
    return d;
}

QuasiFlowData e_flow_quasi_U() {
    const std::vector<std::string> XY = {"x", "y"};
    const MultiPoly px = MultiPoly::variable(XY, "x");
    const MultiPoly py = MultiPoly::variable(XY, "y");
    QuasiFlowData d;
    d.w = RationalFn::from_poly((px * px - py * py).scaled(Rational(1, 2)));
    d.r = RationalFn::from_poly((py * py - px * px).scaled(Rational(1, 2)));
    d.P = px + py;
    d.Q = MultiPoly::constant(XY, Rational(1));

    const auto& V = abxy_vars();
    const RationalFn A = var_fn(V, "A"), B = var_fn(V, "B");
    const RationalFn x = var_fn(V, "x"), y = var_fn(V, "y");
    const RationalFn half = RationalFn::constant(V, Rational(1, 2));
    d.U = (x * x - y * y) / (B - A) + (x + y) * half;
    return d;
}

std::optional<int> rational_flow_criterion(const VectorField2& vf) {
    const auto& V = vf.w.vars();
    const RationalFn x = var_fn(V, "x"), y = var_fn(V, "y");
    const RationalFn n1 = y * vf.w.derivative("y") - x * vf.r.derivative("y");
    const RationalFn d1 = y * vf.w.derivative("x") - x * vf.r.derivative("x");
    if (d1.is_zero()) return std::nullopt;
    const RationalFn ratio = n1 / d1;

    const MultiPoly& num = ratio.num();
    const MultiPoly& den = ratio.den();
    if (den.homogeneous_degree() != std::optional<int>(1)) return std::nullopt;
    if (!num.is_zero() && num.homogeneous_degree() != std::optional<int>(1)) {
        return std::nullopt;
    }
    const int ix = num.var_index("x"), iy = num.var_index("y");
    Expo ex(V.size(), 0), ey(V.size(), 0);
    ex[ix] = 1;
    ey[iy] = 1;
    const Rational a = num.coeff(ex), b = num.coeff(ey);
    const Rational c = den.coeff(ex), e = den.coeff(ey);
    if (a == e) return std::nullopt;

    const Rational m2 = ((a + e) * (a + e) - b * c * Rational(4)) /
                        ((a - e) * (a - e));
    if (!m2.is_integer() || m2.sign() <= 0) return std::nullopt;
    const mpz_class n = m2.numerator();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return static_cast<int>(root.get_si());
}

std::vector<std::pair<long, long>> bc_pairs_enumerate(long bound) {
    if (bound < 6) {
        throw std::invalid_argument("bc_pairs_enumerate: bound >= 6 required");
    }
    std::vector<std::pair<long, long>> out;
    for (long Bv = -bound; Bv <= bound; ++Bv) {
        if (Bv == 0 || Bv == 1) continue;
        for (long Cv = -bound; Cv <= bound; ++Cv) {
            if (Cv == 0 || Cv == 1) continue;
            if (Bv + Cv == 2) continue;
            const long div = Bv * Cv - 1;
            if (div == 0) continue;  // dividend nonzero here, so inadmissible
            if ((Bv + Cv - 2) % div != 0) continue;
            if (std::labs(Bv) > 5 || std::labs(Cv) > 5) {
                throw std::logic_error(
                    "bc_pairs_enumerate: admissible pair outside |B|,|C| <= 5");
            }
            out.emplace_back(Bv, Cv);
        }
    }
    return out;
}

}  // namespace proflow
