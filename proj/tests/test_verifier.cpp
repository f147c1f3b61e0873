#include <doctest.h>

#include "proflow/verifier.hpp"

#include <cmath>

using namespace proflow;
using Cplx = std::complex<double>;

TEST_CASE("functional-equation residual: anchors") {
    const FlowEvaluator id = make_flow_evaluator(FlowKind::identity());
    CHECK(prte_residual(id, CNum(0.7, 0.2), CNum(-0.3, 0.4), CNum(0.5)) == 0.0);

    const FlowEvaluator lam = make_flow_evaluator(FlowKind::lambda_flow());
    CHECK(prte_residual(lam, CNum(0.7), CNum(0.2), CNum(0.4)) < 1e-9);

    const FlowEvaluator p2 = make_flow_evaluator(FlowKind::phi_n(2));
    CHECK(prte_residual(p2, CNum(1.0), CNum(1.0), CNum(0.5)) < 1e-12);

    CHECK_THROWS_AS((void)prte_residual(id, CNum(1.0), CNum(1.0), CNum(0.0)),
                    std::domain_error);
    // phi_2 undefined when the inner point lands on y = -1: (x, y, z) with
    // yz = -1.
    CHECK_THROWS_AS((void)prte_residual(p2, CNum(1.0), CNum(-2.0), CNum(0.5)),
                    std::domain_error);
}

TEST_CASE("boundary residual: anchors") {
    const FlowEvaluator id = make_flow_evaluator(FlowKind::identity());
    CHECK(boundary_residual(id, CNum(0.3, 0.1), CNum(2.0)) == 0.0);
    const FlowEvaluator lam = make_flow_evaluator(FlowKind::lambda_flow());
    CHECK(boundary_residual(lam, CNum(1.0), CNum(2.0)) < 1e-4);
    const FlowEvaluator ex = make_flow_evaluator(FlowKind::exp_flow());
    CHECK(boundary_residual(ex, CNum(3.0), CNum(1.0)) < 1e-4);
}

TEST_CASE("numeric vector field matches the catalogue") {
    {
        const auto [w, r] =
            vector_field_numeric(make_flow_evaluator(FlowKind::lambda_flow()),
                                 CNum(1.0), CNum(1.0));
        CHECK(std::abs(w.v - Cplx(-1.0, 0.0)) < 1e-5);
        CHECK(std::abs(r.v - Cplx(-1.0, 0.0)) < 1e-5);
    }
    {
        const auto [w, r] = vector_field_numeric(
            make_flow_evaluator(FlowKind::exp_flow()), CNum(2.0), CNum(3.0));
        CHECK(std::abs(w.v - Cplx(6.0, 0.0)) < 1e-5);
        CHECK(std::abs(r.v) < 1e-5);
    }
    {
        const auto [w, r] = vector_field_numeric(
            make_flow_evaluator(FlowKind::identity()), CNum(0.4), CNum(-0.8));
        CHECK(std::abs(w.v) < 1e-12);
        CHECK(std::abs(r.v) < 1e-12);
    }
    // The log flow's field -x^2-xy . -y^2 is the least obvious entry; pin it.
    {
        const auto [w, r] = vector_field_numeric(
            make_flow_evaluator(FlowKind::log_flow()), CNum(0.7), CNum(0.4));
        CHECK(std::abs(w.v - Cplx(-0.7 * 0.7 - 0.7 * 0.4, 0.0)) < 1e-5);
        CHECK(std::abs(r.v - Cplx(-0.16, 0.0)) < 1e-5);
    }
}

TEST_CASE("PDE residual: flows satisfy it, mismatched fields do not") {
    const CatalogueEntry& lam = catalogue_entry(FlowKind::lambda_flow());
    auto lam_u = [](CNum a, CNum b) { return lambda_eval(a, b); };
    CHECK(pde_residual(lam_u, CNum(0.3), CNum(0.1), lam.field) < 1e-5);

    const CatalogueEntry& ef = catalogue_entry(FlowKind::e_flow());
    auto e_u = [](CNum a, CNum b) {
        return classical_flow_eval(FlowKind::e_flow(), a, b).u;
    };
    CHECK(pde_residual(e_u, CNum(0.5), CNum(0.2), ef.field) < 1e-5);

    // Negative control: u = x against the field (x^2, y^2) is not a flow
    // pair; at (0.5, 0.2) the residual is |x^2 - x + x| = 0.25.
    auto id_u = [](CNum a, CNum) { return a; };
    const VectorField2 wrong{
        RationalFn::from_poly(MultiPoly::variable({"x", "y"}, "x").pow(2)),
        RationalFn::from_poly(MultiPoly::variable({"x", "y"}, "y").pow(2))};
    CHECK(pde_residual(id_u, CNum(0.5), CNum(0.2), wrong) > 0.1);

    // Second-order stencil: halving h shrinks the residual about 4x.
    const double r1 = pde_residual(lam_u, CNum(0.4), CNum(0.15), lam.field, 2e-4);
    const double r2 = pde_residual(lam_u, CNum(0.4), CNum(0.15), lam.field, 1e-4);
    CHECK(r2 < r1);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.35));
}

TEST_CASE("orbit invariance: anchors") {
    const FlowEvaluator lam = make_flow_evaluator(FlowKind::lambda_flow());
    const CatalogueEntry& le = catalogue_entry(FlowKind::lambda_flow());
    CHECK(orbit_invariance(lam, *le.orbit, CNum(0.9), CNum(0.3), CNum(0.7)) < 1e-8);

    const FlowEvaluator ef = make_flow_evaluator(FlowKind::e_flow());
    const CatalogueEntry& ee = catalogue_entry(FlowKind::e_flow());
    CHECK(orbit_invariance(ef, *ee.orbit, CNum(1.0), CNum(2.0), CNum(0.5)) < 1e-12);

    const FlowEvaluator p3 = make_flow_evaluator(FlowKind::phi_n(3));
    const CatalogueEntry& pe = catalogue_entry(FlowKind::phi_n(3));
    CHECK(orbit_invariance(p3, *pe.orbit, CNum(1.0), CNum(1.0), CNum(2.0)) < 1e-12);
}

TEST_CASE("iteration identity n phi^n = phi(n.)") {
    for (FlowKind k : {FlowKind::lambda_flow(), FlowKind::exp_flow(),
                       FlowKind::tan_flow(), FlowKind::e_flow(), FlowKind::t_flow()}) {
        const FlowEvaluator f = make_flow_evaluator(k);
        for (int n : {2, 3}) {
            CHECK(iteration_residual(f, n, CNum(0.11), CNum(0.07)) < 1e-8);
        }
    }
}

TEST_CASE("verify driver: whole catalogue passes at modest sample counts") {
    const std::vector<CheckReport> reports = verify_all(20250814u, 25);
    CHECK(reports.size() > 40);
    for (const CheckReport& r : reports) {
        INFO(r.flow, " / ", r.check, " residual ", r.max_residual);
        CHECK(r.pass);
        CHECK(r.points == 25);
        CHECK(r.max_residual < r.tolerance);
    }
    // Determinism: same seed, same residuals.
    const std::vector<CheckReport> again = verify_all(20250814u, 25);
    REQUIRE(again.size() == reports.size());
    for (size_t i = 0; i < reports.size(); ++i) {
        CHECK(again[i].max_residual == reports[i].max_residual);
    }
}
