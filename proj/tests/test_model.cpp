#include "gsnc/builders.hpp"
#include "gsnc/model.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace gsnc;

namespace {

bool has_issue(const ValidationReport& report, const std::string& code) {
    for (const auto& issue : report.issues)
        if (issue.code == code)
            return true;
    return false;
}

// All codim-2 intervals with the product of the incidence signs along each
// length-2 path. Independent of Poset.
std::map<std::pair<std::string, std::string>, std::vector<int>> sign_paths(const GsncModel& m) {
    std::map<std::pair<std::string, std::string>, std::vector<int>> paths;
    for (const auto& inc1 : m.incidences)
        for (const auto& inc2 : m.incidences)
            if (inc1.upper == inc2.lower)
                paths[{inc1.lower, inc2.upper}].push_back(inc1.sign * inc2.sign);
    return paths;
}

}  // namespace

TEST_CASE("smooth variety validates at level 0") {
    const auto bundle = smooth_product("p3", {3});
    CHECK(validate_model(bundle.model).ok());
    CHECK(level(bundle.model) == 0);
    CHECK(strata_of_codim(bundle.model, 0).size() == 1);
    CHECK(strata_of_codim(bundle.model, 1).empty());
}

TEST_CASE("nodal curve validates; its node cell is a 1-simplex") {
    const auto bundle = nodal_curve();
    CHECK(validate_model(bundle.model).ok());
    CHECK(level(bundle.model) == 1);

    const auto codim1 = strata_of_codim(bundle.model, 1);
    REQUIRE(codim1.size() == 1);
    CHECK(codim1[0].components == std::vector<std::string>{"L0", "L1"});

    // Face poset of the node by hand: the node plus its two endpoints, the
    // shape of a 1-simplex.
    Poset poset(bundle.model);
    const int node = poset.stratum_index("n0");
    REQUIRE(node >= 0);
    CHECK(poset.ancestors(node).size() == 3);
    CHECK(poset.covers_up(node).size() == 2);
}

TEST_CASE("mv_sign follows the sorted-insertion convention") {
    // Adding the globally smallest missing element: position 0.
    CHECK(insertion_sign({}, {"A", "B", "C"}, {}, {"B"}, "A", false) == 1);
    // Adding at sorted position 1.
    CHECK(insertion_sign({}, {"A", "B", "C"}, {}, {"A"}, "B", false) == -1);

    const auto bundle = nodal_curve();
    CHECK(mv_sign(bundle.model, "n0", "sL0") == -1);  // adds L1 past L0
    CHECK(mv_sign(bundle.model, "n0", "sL1") == 1);   // adds L0 at position 0
    CHECK_THROWS_WITH_AS(mv_sign(bundle.model, "sL0", "sL1"), "not an incidence",
                         std::invalid_argument);
}

TEST_CASE("square model: sign squares anticommute and flipping one breaks it") {
    const auto cxc = product_bundle("cxc", nodal_curve(), nodal_curve());
    CHECK(validate_model(cxc.model).ok());
    CHECK(level(cxc.model) == 2);
    CHECK(cxc.model.strata.size() == 9);
    CHECK(strata_of_codim(cxc.model, 1).size() == 4);
    CHECK(strata_of_codim(cxc.model, 2).size() == 1);

    // Oracle: enumerate the codim-2 sign squares directly from the incidence
    // list. Each has exactly two paths whose products cancel.
    const auto paths = sign_paths(cxc.model);
    int squares = 0;
    for (const auto& [key, products] : paths) {
        REQUIRE(products.size() == 2);
        CHECK(products[0] * products[1] == -1);
        ++squares;
    }
    CHECK(squares == 4);

    // Oracle: among all 2^12 sign assignments, exactly those with four
    // anticommuting squares validate; the generated assignment is one.
    auto broken = cxc.model;
    REQUIRE(broken.incidences.size() == 12);
    broken.incidences[0].sign *= -1;
    const auto report = validate_model(broken);
    CHECK_FALSE(report.ok());
    CHECK(has_issue(report, "sign-square"));
}

TEST_CASE("strata_of_codim partitions the strata") {
    for (const auto& bundle : bundled_examples()) {
        std::set<std::string> seen;
        const int dim = bundle.model.components[0].dim;
        for (int n = 0; n <= dim; ++n)
            for (const auto& s : strata_of_codim(bundle.model, n))
                CHECK(seen.insert(s.id).second);
        CHECK(seen.size() == bundle.model.strata.size());
        CHECK(strata_of_codim(bundle.model, dim + 1).empty());
    }
}

TEST_CASE("product model multiplies dual-complex cell counts") {
    const auto a = cycle_of_lines(3);
    const auto b = nodal_curve();
    const auto ab = product_bundle("ab", a, b);
    CHECK(ab.model.strata.size() == a.model.strata.size() * b.model.strata.size());
    CHECK(validate_model(ab.model).ok());
}

TEST_CASE("pair models validate") {
    CHECK(validate_model(p1_with_boundary_points(2).model).ok());
    CHECK(validate_model(nodal_with_boundary_point().model).ok());
    CHECK(validate_model(p2_with_lines(1).model).ok());
    CHECK(validate_model(p2_with_lines(2).model).ok());
    const auto pair_product =
        product_bundle("pp", p1_with_boundary_points(2), nodal_with_boundary_point());
    CHECK(validate_model(pair_product.model).ok());
}

TEST_CASE("malformed references are reported, not dropped") {
    auto bundle = nodal_curve();
    bundle.model.strata[2].components.push_back("L9");
    const auto report = validate_model(bundle.model);
    CHECK_FALSE(report.ok());
    CHECK(has_issue(report, "unknown-id"));

    GsncModel empty;
    CHECK(has_issue(validate_model(empty), "empty-model"));
}

TEST_CASE("structural defects are reported") {
    SUBCASE("missing codim-0 stratum") {
        auto bundle = nodal_curve();
        bundle.model.strata.erase(bundle.model.strata.begin());
        bundle.model.incidences.erase(bundle.model.incidences.begin());
        CHECK(has_issue(validate_model(bundle.model), "top-stratum"));
    }
    SUBCASE("factor_type sum mismatch") {
        auto bundle = nodal_curve();
        bundle.model.strata[2].factor_type = {2};
        CHECK(has_issue(validate_model(bundle.model), "factor-sum"));
    }
    SUBCASE("unreachable stratum") {
        auto bundle = nodal_curve();
        bundle.model.incidences.clear();
        const auto report = validate_model(bundle.model);
        CHECK(has_issue(report, "unreachable"));
    }
    SUBCASE("wrong cell shape") {
        // Three lines through one node: the node's face poset has three
        // vertices, not a product of simplices of type [1].
        auto bundle = chain_of_lines(3);
        auto& model = bundle.model;
        for (auto& s : model.strata)
            if (s.id == "n0")
                s.components = {"L0", "L1", "L2"};
        model.incidences.push_back({"n0", "sL2", 1});
        CHECK(has_issue(validate_model(model), "cell-shape"));
    }
    SUBCASE("duplicate copy index") {
        auto bundle = cycle_of_lines(2);
        bundle.model.strata[3].copy_index = 0;
        CHECK(has_issue(validate_model(bundle.model), "duplicate-copy"));
    }
}

TEST_CASE("random bundles validate across seeds") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto bundle = random_bundle(seed);
        CHECK(bundle.model.strata.size() <= 30);
        const auto report = validate_model(bundle.model);
        CHECK_MESSAGE(report.ok(), bundle.name, ": ", report.to_string());
    }
}

TEST_CASE("gauge twist preserves validity") {
    const auto bundle = product_bundle("cxc", nodal_curve(), nodal_curve());
    std::vector<int> gauge(bundle.model.strata.size(), 1);
    gauge[2] = -1;
    gauge[5] = -1;
    const auto twisted = gauge_twist(bundle.model, gauge);
    CHECK(validate_model(twisted).ok());
    bool changed = false;
    for (std::size_t i = 0; i < twisted.incidences.size(); ++i)
        changed |= twisted.incidences[i].sign != bundle.model.incidences[i].sign;
    CHECK(changed);
}
