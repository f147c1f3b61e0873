#include <doctest.h>

#include "proflow/dixon.hpp"
#include "proflow/exprs.hpp"
#include "proflow/identities.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

using namespace proflow;
using Cplx = std::complex<double>;

namespace {

MultiPoly var(const std::vector<std::string>& vs, const std::string& n) {
    return MultiPoly::variable(vs, n);
}

// Random complex pair with the products appearing in the ideals kept away
// from zero, so the parametrized points stay numerically honest.
std::pair<Cplx, Cplx> sample_xy(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (;;) {
        const Cplx x(u(rng), u(rng)), y(u(rng), u(rng));
        const Cplx p = x * y * (x - y);
        if (std::abs(p) > 1e-2 && std::abs(x) > 0.05 && std::abs(y) > 0.05 &&
            std::abs(x - y) > 0.05) {
            return {x, y};
        }
    }
}

// Evaluate the raw lhs of a check at a point, skipping points where the
// unreduced denominator degenerates.  Returns true when the value was
// accepted (and stores it), false to ask for a fresh sample.
bool eval_lhs_at(const QuotientCheck& c, const std::vector<Cplx>& pt,
                 Cplx& out) {
    const Cplx den = c.lhs.den().eval<Cplx>(pt);
    if (std::abs(den) < 1e-8) return false;
    out = c.lhs.num().eval<Cplx>(pt) / den;
    return true;
}

}  // namespace

TEST_CASE("quotient checks: verdicts and re-checkable certificates") {
    const auto checks = all_quotient_checks();
    REQUIRE(checks.size() == 5);
    const char* names[] = {"symm1", "symm2", "quaq", "tfun", "sqrt"};
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const QuotientCheck& c = checks[i];
        CHECK(c.name == names[i]);
        CHECK(c.verdict);
        CHECK_FALSE(c.certificate.is_zero());
        // the certificate re-verifies the verdict with one multiplication
        CHECK(c.lhs.num() == c.certificate * c.modulus);
    }
    // The quadratic combination is not an identity of rational functions;
    // it only holds on the variety.
    CHECK_FALSE(checks[2].plain_zero);
    for (const auto& c : checks) CHECK_FALSE(c.plain_zero);
}

TEST_CASE("quotient checks: the radical square lemma") {
    // (2B-1)^2 - (1 - 4xy(x-y)) lies in the ideal of B(1-B) - xy(x-y).
    const std::vector<std::string> V = {"B", "x", "y"};
    const MultiPoly B = var(V, "B"), x = var(V, "x"), y = var(V, "y");
    const MultiPoly one = MultiPoly::constant(V, Rational(1));
    const MultiPoly two = MultiPoly::constant(V, Rational(2));
    const MultiPoly four = MultiPoly::constant(V, Rational(4));
    const MultiPoly lhs =
        (two * B - one) * (two * B - one) - (one - four * x * y * (x - y));
    const QuotientCheck c =
        check_quotient("square-lemma", RationalFn::from_poly(lhs), E_ideal());
    CHECK(c.verdict);
    CHECK_FALSE(c.plain_zero);
    CHECK(c.certificate == MultiPoly::constant(V, Rational(-4)));
}

TEST_CASE("quotient checks: negative controls fail honestly") {
    const auto& V = abxy_vars();
    const RationalFn A = RationalFn::variable(V, "A");
    const RationalFn B = RationalFn::variable(V, "B");
    const RationalFn x = RationalFn::variable(V, "x");
    const RationalFn y = RationalFn::variable(V, "y");
    const RationalFn one = RationalFn::constant(V, Rational(1));
    const RationalFn& R = R_expr();

    // three-term cycle with the third summand dropped
    const QuotientCheck broken1 = check_quotient(
        "symm1-broken",
        unreduced_sum({R, R.subst({A, B, -y, x - y})}), R_ideal());
    CHECK_FALSE(broken1.verdict);

    // two-term relation with the wrong sign on the companion
    const QuotientCheck broken2 = check_quotient(
        "symm2-broken",
        unreduced_sum({R, -R.subst({A / B, one / B, -x, y - x})}), R_ideal());
    CHECK_FALSE(broken2.verdict);

    // differential relation with a perturbed multiplier (3B^2 - 2B)
    const std::vector<std::string> W = {"B", "x", "y"};
    const MultiPoly Bw = var(W, "B"), xw = var(W, "x"), yw = var(W, "y");
    const MultiPoly onew = MultiPoly::constant(W, Rational(1));
    const MultiPoly twow = MultiPoly::constant(W, Rational(2));
    const MultiPoly threew = MultiPoly::constant(W, Rational(3));
    const RationalFn& G = T1_expr();
    const auto dnum = [&](const std::string& v) {
        return G.num().derivative(v) * G.den() - G.num() * G.den().derivative(v);
    };
    const MultiPoly num =
        dnum("B") * (threew * Bw * Bw - twow * Bw) +
        dnum("x") * (xw * xw - twow * xw * yw - xw + twow * Bw * xw) +
        dnum("y") * (yw * yw - twow * xw * yw - yw + twow * Bw * yw) -
        (twow * Bw - onew) * G.num() * G.den();
    const QuotientCheck broken3 = check_quotient(
        "tfun-broken", RationalFn(num, G.den() * G.den(), false), E_ideal());
    CHECK_FALSE(broken3.verdict);
}

TEST_CASE("quotient checks: numeric spot checks on the varieties") {
    std::mt19937_64 rng(0x1d5a11);
    const auto checks = all_quotient_checks();

    // symm1, symm2 on A^3 xy(x-y) + B^3 = 1 via (sm(s)/s, cm(s))
    for (std::size_t k : {std::size_t(0), std::size_t(1)}) {
        int accepted = 0;
        while (accepted < 20) {
            const auto [x, y] = sample_xy(rng);
            const Cplx s = std::pow(x * y * (x - y), 1.0 / 3.0);
            const auto [sm, cm] = sm_cm(CNum(s));
            const Cplx A = sm.v / s, B = cm.v;
            Cplx val;
            if (!eval_lhs_at(checks[k], {A, B, x, y}, val)) continue;
            CHECK(std::abs(val) < 1e-7);
            ++accepted;
        }
    }

    // quaq on AB(A-B) = xy(x-y) via (sp(s) s, cp(s) s)
    {
        int accepted = 0;
        while (accepted < 20) {
            const auto [x, y] = sample_xy(rng);
            const Cplx s = std::pow(x * y * (x - y), 1.0 / 3.0);
            const auto [sp, cp] = sp_cp(CNum(s));
            const Cplx A = sp.v * s, B = cp.v * s;
            Cplx val;
            if (!eval_lhs_at(checks[2], {A, B, x, y}, val)) continue;
            CHECK(std::abs(val) < 1e-7);
            ++accepted;
        }
    }

    // tfun, sqrt on B(1-B) = xy(x-y) via the principal root
    for (std::size_t k : {std::size_t(3), std::size_t(4)}) {
        int accepted = 0;
        while (accepted < 20) {
            const auto [x, y] = sample_xy(rng);
            const Cplx B =
                0.5 + 0.5 * std::sqrt(1.0 - 4.0 * x * y * (x - y));
            Cplx val;
            if (!eval_lhs_at(checks[k], {B, x, y}, val)) continue;
            CHECK(std::abs(val) < 1e-7);
            ++accepted;
        }
    }
}

TEST_CASE("quotient checks: three-term cycle collapses at A=0, B=1") {
    // There the avatar reduces to x itself and the cycle telescopes.
    const QuotientCheck c = symm_identity_1();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.2, 0.9);
    int accepted = 0;
    while (accepted < 5) {
        const Cplx x(u(rng), 0.0), y(-u(rng), 0.0);
        Cplx val;
        if (!eval_lhs_at(c, {Cplx(0.0), Cplx(1.0), x, y}, val)) continue;
        CHECK(std::abs(val) < 1e-12);
        ++accepted;
    }
}

TEST_CASE("superflow forms: values, swap symmetry, guards") {
    {
        const std::vector<std::string> V = {"x", "y"};
        const MultiPoly x = var(V, "x"), y = var(V, "y");
        const auto Q = superflow_Q1(2);
        REQUIRE(Q.size() == 2);
        CHECK(Q[0] == x * x - (x * y).scaled(Rational(2)));
        CHECK(Q[1] == y * y - (x * y).scaled(Rational(2)));
    }
    {
        const std::vector<std::string> V = {"x", "y", "z"};
        const MultiPoly x = var(V, "x"), y = var(V, "y"), z = var(V, "z");
        const auto Q = superflow_Q1(3);
        REQUIRE(Q.size() == 3);
        CHECK(Q[0] == x * x - x * y - x * z);
        CHECK(Q[1] == y * y - y * x - y * z);
    }
    {
        // swapping coordinates 1 <-> 3 carries Q_1 to Q_3
        const auto Q = superflow_Q1(4);
        const auto& V = Q[0].vars();
        const MultiPoly x1 = var(V, "x1"), x2 = var(V, "x2");
        const MultiPoly x3 = var(V, "x3"), x4 = var(V, "x4");
        CHECK(Q[0].subst({x3, x2, x1, x4}) == Q[2]);
    }
    CHECK_THROWS_AS((void)superflow_Q1(1), std::invalid_argument);
}

TEST_CASE("superflow invariance: the six-element plane group") {
    const auto forms = superflow_Q1(2);
    const std::vector<RationalFn> Q = {RationalFn::from_poly(forms[0]),
                                       RationalFn::from_poly(forms[1])};
    const GroupRep G = six_fold_group();
    CHECK(superflow_invariance(Q, G));
    CHECK(superflow_invariance_words(Q, G, 5, 5, 424242));

    // the product sigma tau sigma comes out as expected
    const RatMatrix sts =
        mat_mul(mat_mul(G.generators[0], G.generators[1]), G.generators[0]);
    CHECK(sts[0][0] == Rational(-1));
    CHECK(sts[0][1] == Rational(0));
    CHECK(sts[1][0] == Rational(-1));
    CHECK(sts[1][1] == Rational(1));
}

TEST_CASE("superflow invariance: swaps plus the reflection for N = 3") {
    const auto forms = superflow_Q1(3);
    std::vector<RationalFn> Q;
    for (const auto& f : forms) Q.push_back(RationalFn::from_poly(f));
    GroupRep G;
    G.dimension = 3;
    G.generators = {
        {{Rational(0), Rational(1), Rational(0)},
         {Rational(1), Rational(0), Rational(0)},
         {Rational(0), Rational(0), Rational(1)}},
        {{Rational(0), Rational(0), Rational(1)},
         {Rational(0), Rational(1), Rational(0)},
         {Rational(1), Rational(0), Rational(0)}},
        {{Rational(-1), Rational(0), Rational(0)},
         {Rational(-1), Rational(1), Rational(0)},
         {Rational(-1), Rational(0), Rational(1)}},
    };
    CHECK(superflow_invariance(Q, G));
    CHECK(superflow_invariance_words(Q, G, 6, 4, 99));
}

TEST_CASE("pelican field: invariance depends on the chosen group") {
    const auto Q = pelican_field();
    CHECK(superflow_invariance(Q, a4_pelican_group()));

    // a single sign flip breaks it
    GroupRep flip;
    flip.dimension = 3;
    flip.generators = {{{Rational(-1), Rational(0), Rational(0)},
                        {Rational(0), Rational(1), Rational(0)},
                        {Rational(0), Rational(0), Rational(1)}}};
    CHECK_FALSE(superflow_invariance(Q, flip));

    // the signed transposition from the twisted group also breaks it
    GroupRep signed_swap;
    signed_swap.dimension = 3;
    signed_swap.generators = {sigma4_prime_group().generators[0]};
    CHECK_FALSE(superflow_invariance(Q, signed_swap));

    // the plain transposition keeps it: the field carries the full
    // symmetric-group action
    GroupRep swap;
    swap.dimension = 3;
    swap.generators = {{{Rational(0), Rational(1), Rational(0)},
                        {Rational(1), Rational(0), Rational(0)},
                        {Rational(0), Rational(0), Rational(1)}}};
    CHECK(superflow_invariance(Q, swap));
}

TEST_CASE("twisted symmetric group: rational field invariance") {
    CHECK(sigma4prime_field_check());
    CHECK(superflow_invariance_words(sigma4_prime_field(),
                                     sigma4_prime_group(), 4, 4, 7));
}

TEST_CASE("superflow invariance: shape guards") {
    const auto forms = superflow_Q1(2);
    const std::vector<RationalFn> Q = {RationalFn::from_poly(forms[0]),
                                       RationalFn::from_poly(forms[1])};
    CHECK_THROWS_AS((void)superflow_invariance(Q, a4_pelican_group()),
                    std::invalid_argument);

    RatMatrix singular = {{Rational(1), Rational(2)},
                          {Rational(2), Rational(4)}};
    CHECK_THROWS_AS((void)mat_inverse(singular), std::invalid_argument);
}

TEST_CASE("quasi-flow pre-checks: the power family is plainly flat") {
    for (int N : {2, 3, 5}) {
        const QuotientCheck u = quasi_flow_pre_check(phi_n_quasi_U(N));
        CHECK(u.plain_zero);
        CHECK(u.verdict);
        const QuotientCheck uh = quasi_flow_pre_check(phi_n_quasi_U_hat(N));
        CHECK(uh.plain_zero);
        CHECK(uh.verdict);
        const QuotientCheck v = quasi_flow_pre_check(phi_n_quasi_V(N));
        CHECK(v.plain_zero);
        CHECK(v.verdict);
    }
}

TEST_CASE("quasi-flow pre-check: the exponential family needs the ideal") {
    const QuotientCheck c = quasi_flow_pre_check(e_flow_quasi_U());
    CHECK_FALSE(c.plain_zero);
    CHECK(c.verdict);
    CHECK_FALSE(c.certificate.is_zero());

    // the reduced combination is the documented anchor value
    const auto& V = abxy_vars();
    const RationalFn A = RationalFn::variable(V, "A");
    const RationalFn B = RationalFn::variable(V, "B");
    const RationalFn x = RationalFn::variable(V, "x");
    const RationalFn y = RationalFn::variable(V, "y");
    const RationalFn anchor = (x * x - y * y) * (x + y - A - B) / (B - A);
    CHECK(RationalFn(c.lhs.num(), c.lhs.den()).equals(anchor));
}

TEST_CASE("quasi-flow pre-check: guards") {
    // degree-2 candidate is rejected even though its combination vanishes
    QuasiFlowData d = phi_n_quasi_U(3);
    d.U = d.U * d.U;
    const QuotientCheck c = quasi_flow_pre_check(d);
    CHECK(c.plain_zero);
    CHECK_FALSE(c.verdict);

    // orbit data with no variety at all
    QuasiFlowData flat = phi_n_quasi_U(3);
    const std::vector<std::string> XY = {"x", "y"};
    flat.P = MultiPoly::constant(XY, Rational(1));
    flat.Q = MultiPoly::constant(XY, Rational(1));
    CHECK_THROWS_AS((void)quasi_flow_pre_check(flat), std::invalid_argument);
}

TEST_CASE("quasi-flow boundary: scaled limits recover the flow input") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    // power family at N = 3: U(-z^3 x y^2, -1; xz, yz)/z -> x
    const QuasiFlowData d3 = phi_n_quasi_U(3);
    for (int i = 0; i < 8; ++i) {
        const double x = u(rng), y = u(rng), z = 1e-4;
        if (std::abs(y) < 0.05) continue;
        const Cplx A(-z * z * z * x * y * y), B(-1.0);
        const Cplx val = d3.U.eval<Cplx>({A, B, Cplx(x * z), Cplx(y * z)}) / z;
        CHECK(std::abs(val - Cplx(x)) < 1e-3);
    }

    // exponential family: 1-homogeneity makes the identity exact
    const QuasiFlowData de = e_flow_quasi_U();
    for (int i = 0; i < 8; ++i) {
        const double x = u(rng), y = u(rng), z = 0.37;
        if (std::abs(x + y) < 0.05) continue;
        const Cplx A(-(x + y) * z / 2.0), B(3.0 * (x + y) * z / 2.0);
        const Cplx val = de.U.eval<Cplx>({A, B, Cplx(x * z), Cplx(y * z)}) / z;
        CHECK(std::abs(val - Cplx(x)) < 1e-12);
    }
}

TEST_CASE("level criterion: powers pass, non-flows are rejected") {
    const std::vector<std::string> V = {"x", "y"};
    const MultiPoly x = var(V, "x"), y = var(V, "y");
    for (int N = 2; N <= 6; ++N) {
        VectorField2 vf{
            RationalFn::from_poly((x * y).scaled(Rational(N - 1))),
            RationalFn::from_poly(-(y * y))};
        const auto level = rational_flow_criterion(vf);
        REQUIRE(level.has_value());
        CHECK(*level == N);
    }
    {
        // quadratic-quotient field: the ratio is not a ratio of linear forms
        VectorField2 vf{
            RationalFn::from_poly(x * x - (x * y).scaled(Rational(2))),
            RationalFn::from_poly(y * y - (x * y).scaled(Rational(2)))};
        CHECK_FALSE(rational_flow_criterion(vf).has_value());
    }
    {
        // symmetric field: a = d degenerates the discriminant
        VectorField2 vf{RationalFn::from_poly(x * x + y * y),
                        RationalFn::from_poly(x * x + y * y)};
        CHECK_FALSE(rational_flow_criterion(vf).has_value());
    }
    {
        VectorField2 vf{RationalFn::constant(V, Rational(0)),
                        RationalFn::constant(V, Rational(0))};
        CHECK_FALSE(rational_flow_criterion(vf).has_value());
    }
}

TEST_CASE("integer pair scan: the complete list") {
    const auto pairs = bc_pairs_enumerate(6);
    const std::vector<std::pair<long, long>> expected = {
        {-5, -2}, {-5, -1}, {-3, -3}, {-3, -1}, {-2, -5},
        {-2, -2}, {-2, -1}, {-1, -5}, {-1, -3}, {-1, -2}};
    CHECK(pairs == expected);
    // widening the window finds nothing new
    CHECK(bc_pairs_enumerate(50) == expected);
    CHECK_THROWS_AS((void)bc_pairs_enumerate(5), std::invalid_argument);
}
