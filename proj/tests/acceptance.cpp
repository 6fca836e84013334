// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are exact (rational arithmetic throughout).

#include "gsnc/builders.hpp"
#include "gsnc/divisor.hpp"
#include "gsnc/epoly.hpp"
#include "gsnc/model_io.hpp"
#include "gsnc/mv.hpp"
#include "gsnc/weight.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace gsnc;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << label;
    if (!detail.empty())
        std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

void criterion_1_mayer_vietoris() {
    struct Case {
        ModelBundle bundle;
        std::vector<int> expected;
    };
    std::vector<Case> cases;
    cases.push_back({nodal_curve(), {1, 0, 2}});
    cases.push_back({cycle_of_lines(3), {1, 1, 3}});
    cases.push_back({product_bundle("cxc", nodal_curve(), nodal_curve()), {1, 0, 4, 0, 4}});
    cases.push_back({smooth_product("p1xp1", {1, 1}), {1, 0, 2, 0, 1}});

    bool ok = true;
    std::ostringstream detail;
    for (const auto& c : cases) {
        const auto start = std::chrono::steady_clock::now();
        const auto betti = cohomology_of_X(build_mv_complex(c.bundle.model, c.bundle.hodge));
        const double elapsed = seconds_since(start);
        if (betti.betti != c.expected) {
            ok = false;
            detail << c.bundle.name << " mismatch; ";
        }
        if (elapsed >= 1.0) {
            ok = false;
            detail << c.bundle.name << " took " << elapsed << "s; ";
        }
    }
    report(1, "Mayer-Vietoris Betti numbers match hand oracles exactly, < 1 s each", ok,
           detail.str());
}

void criterion_2_gr1_indexing() {
    bool ok = true;
    std::ostringstream detail;
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto bundle = random_bundle(seed);
        if (bundle.model.strata.size() > 30) {
            ok = false;
            detail << bundle.name << " exceeds 30 strata; ";
            continue;
        }
        if (!validate_model(bundle.model).ok() || !validate_hodge(bundle.model, bundle.hodge).ok()) {
            ok = false;
            detail << bundle.name << " invalid; ";
            continue;
        }
        try {
            auto page = assemble_E1(bundle.model, bundle.hodge);
            for (const auto& s : page.summands) {
                const auto& stratum = bundle.model.strata[s.stratum];
                // codim of Y inside X^[p] is p+q; the complex shift is 2p+q.
                if (stratum.codim - s.p != s.p + s.q || 2 * s.p + s.q != stratum.codim) {
                    ok = false;
                    detail << bundle.name << " summand indexing broken; ";
                }
                ++checked;
            }
            assemble_d1(bundle.model, bundle.hodge, page);  // asserts d1 o d1 = 0
        } catch (const std::exception& e) {
            ok = false;
            detail << bundle.name << ": " << e.what() << "; ";
        }
    }
    report(2, "Lemma indexing on 100 random models, d1 o d1 = 0 asserted", ok,
           ok ? std::to_string(checked) + " summands" : detail.str());
}

void criterion_3_degeneration_values() {
    bool ok = true;
    std::ostringstream detail;

    const auto cstar = p1_with_boundary_points(2);
    const auto cstar_table = mixed_hodge_numbers(cstar.model, cstar.hodge);
    if (cstar_table.entry(0, 0, 0) != 1 || cstar_table.entry(1, 1, 1) != 1 ||
        cstar_table.entries.size() != 2) {
        ok = false;
        detail << "C^* table off; ";
    }

    const auto cycle = cycle_of_lines(3);
    const auto cycle_table = mixed_hodge_numbers(cycle.model, cycle.hodge);
    if (cycle_table.entry(1, 0, 0) != 1 || cycle_table.entry(2, 1, 1) != 3) {
        ok = false;
        detail << "cycle-3 table off; ";
    }
    report(3, "mixed Hodge numbers of C^* and the 3-cycle are exact", ok, detail.str());
}

void criterion_4_epoly_oracle() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;
    auto check = [&](const ModelBundle& bundle) {
        const auto direct = e_polynomial_strata(bundle.model, bundle.hodge);
        const auto via_mhs =
            e_polynomial_from_mhs(mixed_hodge_numbers(bundle.model, bundle.hodge));
        if (direct != via_mhs) {
            ok = false;
            detail << bundle.name << ": " << direct.to_string() << " vs " << via_mhs.to_string()
                   << "; ";
        }
    };
    for (const auto& bundle : bundled_examples())
        check(bundle);
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        check(random_bundle(seed));
    const double elapsed = seconds_since(start);
    if (elapsed >= 60.0) {
        ok = false;
        detail << "suite took " << elapsed << "s";
    }
    std::ostringstream timing;
    timing.precision(2);
    timing << std::fixed << elapsed << "s";
    report(4, "E-polynomial oracle equality on corpus + 100 random models, < 60 s", ok,
           ok ? timing.str() : detail.str());
}

void criterion_5_weight_bounds() {
    bool ok = true;
    std::ostringstream detail;
    auto check = [&](const ModelBundle& bundle) {
        const auto table = mixed_hodge_numbers(bundle.model, bundle.hodge);
        const bool proper = bundle.model.b_branch_ids.empty();
        const bool smooth_irreducible = bundle.model.strata.size() == 1;
        for (const auto& [key, dim] : table.weights) {
            if (dim == 0)
                continue;
            const auto [n, w] = key;
            if (proper && w > n) {
                ok = false;
                detail << bundle.name << " weight " << w << " > n " << n << "; ";
            }
            if (smooth_irreducible && proper && w != n) {
                ok = false;
                detail << bundle.name << " impure; ";
            }
            if (bundle.model.components.size() == 1 && w < n) {
                ok = false;
                detail << bundle.name << " smooth-irreducible weight " << w << " < n; ";
            }
        }
    };
    for (const auto& bundle : bundled_examples())
        check(bundle);
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        check(random_bundle(seed));
    report(5, "weight bounds: w <= n for proper B = 0, purity for smooth proper", ok,
           detail.str());
}

void criterion_6_hodge_two_way() {
    bool ok = true;
    std::ostringstream detail;
    auto check = [&](const ModelBundle& bundle) {
        if (!hodge_filtration_dims(bundle.model, bundle.hodge).consistent) {
            ok = false;
            detail << bundle.name << "; ";
        }
    };
    for (const auto& bundle : bundled_examples())
        check(bundle);
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        check(random_bundle(seed));
    report(6, "Hodge filtration routes (i) and (ii) agree on every run", ok, detail.str());
}

void criterion_7_structure_sheaf() {
    const auto cycle = cycle_of_lines(3);
    const auto cycle_h = structure_sheaf_cohomology(cycle.model, cycle.hodge);
    const auto cxc = product_bundle("cxc", nodal_curve(), nodal_curve());
    const auto cxc_h = structure_sheaf_cohomology(cxc.model, cxc.hodge);
    const bool ok = cycle_h.size() >= 2 && cycle_h[0] == 1 && cycle_h[1] == 1 &&
                    cxc_h == std::vector<int>{1, 0, 0, 0, 0};
    report(7, "structure sheaf: 3-cycle has h^0 = h^1 = 1, square model (1,0,0,0,0)", ok);
}

void criterion_8_divisor_arithmetic() {
    bool ok = true;
    std::ostringstream detail;
    std::mt19937_64 rng(2024);
    const auto pair = p1_with_boundary_points(2);

    for (int trial = 0; trial < 1000; ++trial) {
        const Rational d(static_cast<int>(rng() % 2001) - 1000, 1 + static_cast<int>(rng() % 999));
        QDivisor divisor;
        divisor.id = "D";
        divisor.coefficients = {{"b0", d}};
        const auto once = round_up(divisor);
        if (round_up(once).coefficients != once.coefficients) {
            ok = false;
            detail << "idempotence fails at " << rational_to_string(d) << "; ";
        }
        const Rational gap = once.coefficients[0].second - d;
        if (gap < 0 || gap >= 1) {
            ok = false;
            detail << "ceiling gap out of range at " << rational_to_string(d) << "; ";
        }
        const Rational d2 = d + Rational(static_cast<int>(rng() % 100), 1 + rng() % 50);
        QDivisor bigger;
        bigger.id = "D2";
        bigger.coefficients = {{"b0", d2}};
        if (round_up(bigger).coefficients[0].second < once.coefficients[0].second) {
            ok = false;
            detail << "monotonicity fails; ";
        }

        // Covering minimality by brute force over the divisors of m_j.
        const auto plan = covering_plan(pair.model, divisor);
        const Int m = plan.multiplicities[0].second;
        if (m > 1000 || denominator(Rational(d * m)) != 1) {
            ok = false;
            detail << "bad multiplicity at " << rational_to_string(d) << "; ";
        }
        for (Int candidate = 1; candidate < m; ++candidate)
            if (m % candidate == 0 && denominator(Rational(d * candidate)) == 1) {
                ok = false;
                detail << "non-minimal m at " << rational_to_string(d) << "; ";
            }
    }
    report(8, "round-up properties and covering-plan minimality on 1000 random Q-divisors", ok,
           detail.str());
}

void criterion_9_sign_gauge() {
    bool ok = true;
    std::ostringstream detail;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto reference = random_bundle(seed);
        const auto ref_table = mixed_hodge_numbers(reference.model, reference.hodge);
        const auto ref_epoly = e_polynomial_strata(reference.model, reference.hodge);
        for (std::uint64_t perm = 1; perm <= 5; ++perm) {
            const auto permuted = random_bundle(seed, perm);
            if (!validate_model(permuted.model).ok()) {
                ok = false;
                detail << permuted.name << " perm " << perm << " invalid; ";
                continue;
            }
            const auto table = mixed_hodge_numbers(permuted.model, permuted.hodge);
            if (table.entries != ref_table.entries || table.weights != ref_table.weights) {
                ok = false;
                detail << permuted.name << " perm " << perm << " moved the MHS table; ";
            }
            if (e_polynomial_strata(permuted.model, permuted.hodge) != ref_epoly) {
                ok = false;
                detail << permuted.name << " perm " << perm << " moved the E-polynomial; ";
            }
            if (permuted.model.b_branch_ids.empty()) {
                const auto ref_betti =
                    cohomology_of_X(build_mv_complex(reference.model, reference.hodge));
                const auto betti =
                    cohomology_of_X(build_mv_complex(permuted.model, permuted.hodge));
                if (betti.betti != ref_betti.betti || betti.weights != ref_betti.weights) {
                    ok = false;
                    detail << permuted.name << " perm " << perm << " moved Betti numbers; ";
                }
            }
        }
    }
    report(9, "component reorderings change matrices but no reported dimension (20 x 5)", ok,
           detail.str());
}

}  // namespace

int main() {
    criterion_1_mayer_vietoris();
    criterion_2_gr1_indexing();
    criterion_3_degeneration_values();
    criterion_4_epoly_oracle();
    criterion_5_weight_bounds();
    criterion_6_hodge_two_way();
    criterion_7_structure_sheaf();
    criterion_8_divisor_arithmetic();
    criterion_9_sign_gauge();

    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
