#include "gsnc/builders.hpp"
#include "gsnc/mv.hpp"

#include <doctest.h>

#include <numeric>

using namespace gsnc;

namespace {

QMatrix mat(std::vector<std::vector<int>> rows) {
    std::vector<std::vector<Rational>> data;
    for (auto& row : rows)
        data.emplace_back(row.begin(), row.end());
    return QMatrix::from_rows(data);
}

long long slot_euler(const BigradedComplex& complex) {
    long long chi = 0;
    for (const auto& [key, dim] : complex.slots) {
        const int p = std::get<0>(key), k = std::get<1>(key);
        chi += ((p + k) % 2 == 0) ? dim : -dim;
    }
    return chi;
}

}  // namespace

TEST_CASE("nodal curve Mayer-Vietoris complex") {
    const auto bundle = nodal_curve();
    const auto complex = build_mv_complex(bundle.model, bundle.hodge);
    CHECK(complex.slot_dim(0, 0, 0) == 2);
    CHECK(complex.slot_dim(0, 2, 1) == 2);
    CHECK(complex.slot_dim(1, 0, 0) == 1);
    // Two restrictions to the node, alternating signs (our convention).
    REQUIRE(complex.differential(0, 0, 0));
    CHECK(*complex.differential(0, 0, 0) == mat({{-1}, {1}}));

    const auto betti = cohomology_of_X(complex);
    CHECK(betti.betti == std::vector<int>{1, 0, 2});
}

TEST_CASE("smooth variety gives a single column") {
    const auto bundle = smooth_product("p1xp1", {1, 1});
    const auto complex = build_mv_complex(bundle.model, bundle.hodge);
    CHECK(complex.max_p == 0);
    CHECK(complex.d1.empty());
    const auto betti = cohomology_of_X(complex);
    CHECK(betti.betti == std::vector<int>{1, 0, 2, 0, 1});
}

TEST_CASE("square model slot dimensions match the Kuenneth enumeration") {
    const auto cxc = product_bundle("cxc", nodal_curve(), nodal_curve());
    const auto complex = build_mv_complex(cxc.model, cxc.hodge);
    auto total = [&](int p, int k) {
        int dim = 0;
        for (int a = 0; a <= k; ++a)
            dim += complex.slot_dim(p, k, a);
        return dim;
    };
    CHECK(total(0, 0) == 4);
    CHECK(total(1, 0) == 4);
    CHECK(total(2, 0) == 1);
    CHECK(total(0, 2) == 8);
    CHECK(total(1, 2) == 4);
    CHECK(total(0, 4) == 4);

    // Kuenneth oracle: b(CxC) is the convolution square of b(C) = (1,0,2).
    const std::vector<int> bc{1, 0, 2};
    std::vector<int> expected(5, 0);
    for (std::size_t i = 0; i < bc.size(); ++i)
        for (std::size_t j = 0; j < bc.size(); ++j)
            expected[i + j] += bc[i] * bc[j];
    CHECK(expected == std::vector<int>{1, 0, 4, 0, 4});
    CHECK(cohomology_of_X(complex).betti == expected);
}

TEST_CASE("cycle of three lines: Betti (1,1,3), H^1 of weight 0") {
    // Hand Mayer-Vietoris: the dual complex is a 3-cycle, the rank of the
    // Q^3 -> Q^3 differential is 2.
    const auto bundle = cycle_of_lines(3);
    const auto complex = build_mv_complex(bundle.model, bundle.hodge);
    REQUIRE(complex.differential(0, 0, 0));
    CHECK(complex.differential(0, 0, 0)->rank() == 2);

    const auto betti = cohomology_of_X(complex);
    CHECK(betti.betti == std::vector<int>{1, 1, 3});
    CHECK(betti.weights.at({1, 0}) == 1);  // the cycle class has weight 0
    CHECK(betti.weights.at({2, 2}) == 3);
}

TEST_CASE("structure sheaf cohomology") {
    SUBCASE("cycle of three lines has arithmetic genus 1") {
        const auto bundle = cycle_of_lines(3);
        CHECK(structure_sheaf_cohomology(bundle.model, bundle.hodge) ==
              std::vector<int>{1, 1, 0});
    }
    SUBCASE("smooth P^1 x P^1") {
        const auto bundle = smooth_product("p1xp1", {1, 1});
        CHECK(structure_sheaf_cohomology(bundle.model, bundle.hodge) ==
              std::vector<int>{1, 0, 0, 0, 0});
    }
    SUBCASE("square model: higher classes all have Hodge index >= 1") {
        const auto cxc = product_bundle("cxc", nodal_curve(), nodal_curve());
        CHECK(structure_sheaf_cohomology(cxc.model, cxc.hodge) ==
              std::vector<int>{1, 0, 0, 0, 0});
    }
}

TEST_CASE("total Euler characteristic is exact on the complex") {
    for (const auto& bundle : bundled_examples()) {
        if (!bundle.model.b_branch_ids.empty())
            continue;
        const auto complex = build_mv_complex(bundle.model, bundle.hodge);
        const auto betti = cohomology_of_X(complex);
        CHECK(slot_euler(complex) == betti.euler_characteristic());

        // Same identity phrased on strata: sum over X^[n] of chi_top.
        long long chi_strata = 0;
        for (const auto& s : bundle.model.strata) {
            const auto chi = bundle.hodge.stratum(s.id)->euler_characteristic();
            chi_strata += (s.codim % 2 == 0) ? chi : -chi;
        }
        CHECK(chi_strata == betti.euler_characteristic());
    }
}

TEST_CASE("b_0 equals the number of dual-complex components") {
    CHECK(cohomology_of_X(build_mv_complex(chain_of_lines(4).model, chain_of_lines(4).hodge))
              .betti[0] == 1);
    CHECK(cohomology_of_X(build_mv_complex(cycle_of_lines(5).model, cycle_of_lines(5).hodge))
              .betti[0] == 1);
}

TEST_CASE("the a = 0 slice is dominated by the full page") {
    const auto bundle = cycle_of_lines(3);
    const auto sheaf = structure_sheaf_cohomology(bundle.model, bundle.hodge);
    const auto betti = cohomology_of_X(build_mv_complex(bundle.model, bundle.hodge));
    for (std::size_t n = 0; n < sheaf.size(); ++n)
        CHECK(sheaf[n] <= betti.betti[n]);
}

TEST_CASE("sign gauge does not move Betti numbers") {
    const auto bundle = product_bundle("cxc", nodal_curve(), nodal_curve());
    const auto reference = cohomology_of_X(build_mv_complex(bundle.model, bundle.hodge));
    std::vector<int> gauge(bundle.model.strata.size(), 1);
    for (std::size_t i = 0; i < gauge.size(); i += 2)
        gauge[i] = -1;
    const auto twisted = gauge_twist(bundle.model, gauge);
    const auto betti = cohomology_of_X(build_mv_complex(twisted, bundle.hodge));
    CHECK(betti.betti == reference.betti);
    CHECK(betti.weights == reference.weights);
}

TEST_CASE("pair models are rejected") {
    const auto bundle = p1_with_boundary_points(2);
    CHECK_THROWS_AS(build_mv_complex(bundle.model, bundle.hodge), std::invalid_argument);
}
