#include <doctest.h>

#include "proflow/ffield.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

using namespace proflow;

namespace {

PElem fin(int v, int p = 5) { return PElem::fin(v, p); }
const PElem inf = PElem::infinity();

// completed grid over F_5, row-major with x down and y across
const char* const kGrid5[36] = {
    "0•0",      "1•∞", "∞•1", "2•0",
    "1•4",      "4•2",      //
    "∞•2", "3•3",      "4•3",      "0•∞",
    "1•0",      "∞•3",  //
    "3•∞", "3•4",      "4•4",      "∞•4",
    "1•2",      "3•0",      //
    "0•2",      "∞•0", "2•∞", "2•2",
    "1•3",      "2•3",      //
    "4•1",      "0•1",      "2•1",      "3•1",
    "∞•∞", "0•4", //
    "2•4",      "3•2",      "4•∞", "4•0",
    "0•3",      "1•1"};

}  // namespace

TEST_CASE("partial arithmetic on the completed line") {
    const int p = 5;
    CHECK(*pf_add(fin(3), inf, p) == inf);
    CHECK(*pf_add(fin(0), inf, p) == inf);
    CHECK_FALSE(pf_add(inf, inf, p).has_value());
    CHECK(*pf_add(fin(3), fin(4), p) == fin(2));

    CHECK(*pf_mul(fin(2), inf, p) == inf);
    CHECK(*pf_mul(inf, inf, p) == inf);
    CHECK_FALSE(pf_mul(fin(0), inf, p).has_value());

    CHECK(*pf_div(fin(2), inf, p) == fin(0));
    CHECK(*pf_div(fin(0), inf, p) == fin(0));
    CHECK(*pf_div(fin(1), fin(0), p) == inf);
    CHECK(*pf_div(inf, fin(0), p) == inf);
    CHECK_FALSE(pf_div(fin(0), fin(0), p).has_value());
    CHECK_FALSE(pf_div(inf, inf, p).has_value());
    CHECK(*pf_div(fin(3), fin(4), p) == fin(2));

    CHECK(pf_inv(fin(0), p) == inf);
    CHECK(pf_inv(inf, p) == fin(0));
    CHECK(pf_neg(inf, p) == inf);
    CHECK(pf_neg(fin(2), p) == fin(3));
    CHECK_FALSE(pf_sub(inf, inf, p).has_value());

    CHECK(pelem_str(inf) == "∞");
    CHECK(pelem_str(fin(4)) == "4");
}

TEST_CASE("scaling a completed pair keeps its infinite coordinates") {
    const int p = 5;
    const CompletedPoint a{fin(1), inf};
    CHECK(scale_point(2, a, p) == CompletedPoint{fin(2), inf});
    const CompletedPoint b{fin(0), inf};
    CHECK(scale_point(3, b, p) == CompletedPoint{fin(0), inf});
    CHECK(scale_point(7, a, p) == CompletedPoint{fin(2), inf});
    CHECK_THROWS_AS((void)scale_point(5, a, p), std::invalid_argument);
    CHECK(cpoint_str(a) == "1•∞");
}

TEST_CASE("one-dimensional flows: counts and classification") {
    for (int p : {2, 3, 5}) {
        const auto flows = enumerate_1d_flows(p);
        CHECK(static_cast<int>(flows.size()) == p + 2);

        int zero = 0, infinite = 0;
        std::set<int> params;
        for (const auto& f : flows) {
            CHECK(prte_1d_holds(f.table, p));
            switch (f.kind) {
                case Flow1D::Kind::zero_map: ++zero; break;
                case Flow1D::Kind::infinity_map: ++infinite; break;
                case Flow1D::Kind::moebius: params.insert(f.a); break;
            }
        }
        CHECK(zero == 1);
        CHECK(infinite == 1);
        // the p non-singular flows are x/(ax+1) with a running over F_p
        CHECK(static_cast<int>(params.size()) == p);
        CHECK(params.count(0) == 1);  // the identity is always there
    }
    CHECK_THROWS_AS((void)enumerate_1d_flows(4), std::invalid_argument);
    CHECK_THROWS_AS((void)enumerate_1d_flows(11), std::invalid_argument);
}

TEST_CASE("one-dimensional flows: the largest supported prime") {
    CHECK(enumerate_1d_flows(7).size() == 9);
}

TEST_CASE("pointwise equation alone does not pin the infinity slot") {
    // identity on residues with a rogue 0 at infinity: every pair that
    // would constrain the last slot hits an undefined intermediate, so the
    // bare equation accepts it; the enumeration rejects it for not being a
    // bijection or a constant.
    const int p = 3;
    const std::vector<PElem> rogue = {fin(0, p), fin(1, p), fin(2, p),
                                      fin(0, p)};
    CHECK(prte_1d_holds(rogue, p));
    const auto flows = enumerate_1d_flows(p);
    CHECK(std::none_of(flows.begin(), flows.end(), [&](const Flow1D& f) {
        return f.table == rogue;
    }));
}

TEST_CASE("quadratic flow: direct evaluation domain") {
    const int p = 5;
    CHECK(*phi_p_direct(p, {fin(0), fin(0)}) == CompletedPoint{fin(0), fin(0)});
    CHECK(*phi_p_direct(p, {fin(4), fin(0)}) == CompletedPoint{fin(4), fin(1)});
    CHECK_FALSE(phi_p_direct(p, {fin(3), fin(1)}).has_value());
    CHECK_FALSE(phi_p_direct(p, {inf, fin(2)}).has_value());
    CHECK_FALSE(phi_p_direct(p, {fin(2), inf}).has_value());

    int defined = 0;
    for (int x = 0; x < p; ++x) {
        for (int y = 0; y < p; ++y) {
            defined += phi_p_direct(p, {fin(x), fin(y)}).has_value() ? 1 : 0;
        }
    }
    CHECK(defined == 16);
}

TEST_CASE("completed grid reproduces the recorded five-table") {
    const CompletionResult res = phi_p_completion(5);
    CHECK(res.direct_cells == 16);
    CHECK(res.completed_cells == 20);
    REQUIRE(res.grid.size() == 36);
    for (int i = 0; i < 36; ++i) {
        CHECK(cpoint_str(res.grid[i]) == kGrid5[i]);
    }
}

TEST_CASE("completed grid: iteration identity and bijectivity") {
    const CompletionResult res = phi_p_completion(5);
    const auto at = [&](const CompletedPoint& pt) {
        const int xi = pt.a.inf ? 5 : pt.a.v, yi = pt.b.inf ? 5 : pt.b.v;
        return res.grid[xi * 6 + yi];
    };
    for (int n : {2, 3}) {
        for (int xi = 0; xi <= 5; ++xi) {
            for (int yi = 0; yi <= 5; ++yi) {
                const CompletedPoint x{xi == 5 ? inf : fin(xi),
                                       yi == 5 ? inf : fin(yi)};
                CompletedPoint lhs = x;
                for (int i = 0; i < n; ++i) lhs = at(lhs);
                CHECK(scale_point(n, lhs, 5) == at(scale_point(n, x, 5)));
            }
        }
    }
    std::set<std::string> outputs;
    for (const auto& pt : res.grid) outputs.insert(cpoint_str(pt));
    CHECK(outputs.size() == 36);
}

TEST_CASE("single-cell lookups combine direct and completed values") {
    CHECK(*phi_p_eval(5, fin(0), fin(0)) == CompletedPoint{fin(0), fin(0)});
    CHECK(*phi_p_eval(5, fin(3), fin(1)) == CompletedPoint{inf, fin(0)});
    CHECK(*phi_p_eval(5, fin(4), fin(4)) == CompletedPoint{inf, inf});
    CHECK(cpoint_str(*phi_p_eval(5, inf, inf)) == "1•1");

    // non-residue prime: the lone undefined input completes to the extra
    // sphere point, which is not a coordinate pair
    CHECK(*phi_p_eval(3, PElem::fin(0, 3), PElem::fin(0, 3)) ==
          CompletedPoint{PElem::fin(0, 3), PElem::fin(0, 3)});
    CHECK_FALSE(phi_p_eval(3, PElem::fin(2, 3), PElem::fin(2, 3)).has_value());
    CHECK_THROWS_AS((void)phi_p_eval(2, fin(0, 2), fin(0, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)phi_p_completion(7), std::invalid_argument);
}

TEST_CASE("torus completion at the next residue prime") {
    const CompletionResult res = phi_p_completion(13);
    CHECK(res.direct_cells == 144);   // 169 minus two crossing lines
    CHECK(res.completed_cells == 52);
    std::set<std::string> outputs;
    for (const auto& pt : res.grid) outputs.insert(cpoint_str(pt));
    CHECK(outputs.size() == 196);
}

TEST_CASE("bijection audits across the small odd primes") {
    for (int p : {3, 5, 7, 11, 13}) {
        const auto report = cardinality_checks(p);
        REQUIRE(report.size() == 4);
        CHECK(report[0].cardinality == static_cast<long>(p) * p);
        CHECK(report[1].cardinality == static_cast<long>(p + 1) * (p + 1));
        CHECK(report[2].cardinality == static_cast<long>(p) * p + p + 1);
        if (p % 4 == 3) {
            CHECK(report[3].cardinality == static_cast<long>(p) * p + 1);
            CHECK(report[3].space == "F_p^2 + inf");
        } else {
            CHECK(report[3].cardinality == static_cast<long>(p + 1) * (p + 1));
        }
        for (const auto& e : report) CHECK(e.bijection);
    }
    CHECK_THROWS_AS((void)cardinality_checks(2), std::invalid_argument);
    CHECK_THROWS_AS((void)cardinality_checks(17), std::invalid_argument);
}

TEST_CASE("cubic locus point counts stay stable") {
    CHECK(cubic_flow_locus_count(3) == 2);
    CHECK(cubic_flow_locus_count(5) == 2);
    CHECK(cubic_flow_locus_count(7) == 6);
    CHECK(cubic_flow_locus_count(11) == 10);
    CHECK(cubic_flow_locus_count(13) == 10);
}
