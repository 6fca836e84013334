#include "gsnc/builders.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace gsnc {

namespace {

// Declarative assembly of a bundle: strata carry their projective factors,
// restrictions their class maps; finish() generates cohomology, pairings
// and restriction matrices.
class BundleBuilder {
public:
    BundleBuilder(std::string name, int dim) : dim_(dim) { bundle_.name = std::move(name); }

    void description(std::string text) { bundle_.description = std::move(text); }

    void component(const std::string& id) { bundle_.model.components.push_back({id, dim_}); }

    void branch(const std::string& id) { bundle_.model.b_branch_ids.push_back(id); }

    void stratum(const std::string& id, std::vector<std::string> comps,
                 std::vector<std::string> branches, int copy, int codim,
                 std::vector<int> factor_type, std::vector<int> projective) {
        bundle_.model.strata.push_back(
            {id, std::move(comps), std::move(branches), copy, codim, std::move(factor_type)});
        projective_[id] = std::move(projective);
    }

    void incidence(const std::string& lower, const std::string& upper, int sign) {
        bundle_.model.incidences.push_back({lower, upper, sign});
    }

    // Sign by sorted insertion of the single added element, B-branches
    // ordered before components.
    void incidence_auto(const std::string& lower, const std::string& upper) {
        const auto& lo = find_stratum(lower);
        const auto& hi = find_stratum(upper);
        std::string added;
        bool added_is_branch = false;
        int extra = 0;
        for (const auto& c : lo.components)
            if (std::find(hi.components.begin(), hi.components.end(), c) == hi.components.end()) {
                added = c;
                added_is_branch = false;
                ++extra;
            }
        for (const auto& b : lo.b_branches)
            if (std::find(hi.b_branches.begin(), hi.b_branches.end(), b) == hi.b_branches.end()) {
                added = b;
                added_is_branch = true;
                ++extra;
            }
        if (extra != 1)
            throw std::logic_error("incidence_auto needs a single added element");
        std::vector<std::string> comp_order;
        for (const auto& c : bundle_.model.components)
            comp_order.push_back(c.id);
        const int sign = insertion_sign(bundle_.model.b_branch_ids, comp_order, hi.b_branches,
                                        hi.components, added, added_is_branch);
        incidence(lower, upper, sign);
    }

    void restriction(const std::string& source, const std::string& target,
                     std::vector<std::vector<Int>> class_images) {
        bundle_.class_maps[{source, target}] = std::move(class_images);
    }

    void divisor(QDivisor d) { bundle_.divisors.push_back(std::move(d)); }

    ModelBundle finish() {
        for (const auto& s : bundle_.model.strata) {
            auto data = make_projective_product(projective_.at(s.id));
            data.cohomology.stratum = s.id;
            data.pairing.stratum = s.id;
            bundle_.hodge.cohomology.emplace(s.id, std::move(data.cohomology));
            bundle_.hodge.pairings.emplace(s.id, std::move(data.pairing));
        }
        for (const auto& [key, images] : bundle_.class_maps) {
            const auto& src = bundle_.hodge.cohomology.at(key.first);
            const auto& tgt = bundle_.hodge.cohomology.at(key.second);
            bundle_.hodge.restrictions.push_back(restriction_from_class_map(src, tgt, images));
        }
        return std::move(bundle_);
    }

private:
    const Stratum& find_stratum(const std::string& id) const {
        for (const auto& s : bundle_.model.strata)
            if (s.id == id)
                return s;
        throw std::logic_error("builder: unknown stratum '" + id + "'");
    }

    int dim_;
    ModelBundle bundle_;
    std::map<std::string, std::vector<int>> projective_;
};

std::vector<std::vector<Int>> empty_class_map() { return {std::vector<Int>{}}; }

// Line configurations over a graph: one P^1 per vertex, one node per edge,
// optional boundary points, declaration order optionally shuffled.
ModelBundle line_configuration(const std::string& name, int lines,
                               const std::vector<std::pair<int, int>>& edges,
                               const std::vector<int>& boundary_points_on,
                               std::mt19937_64* order_rng) {
    BundleBuilder builder(name, 1);
    std::vector<int> comp_order(lines);
    for (int i = 0; i < lines; ++i)
        comp_order[i] = i;
    std::vector<int> branch_order(boundary_points_on.size());
    for (std::size_t i = 0; i < branch_order.size(); ++i)
        branch_order[i] = static_cast<int>(i);
    if (order_rng) {
        std::shuffle(comp_order.begin(), comp_order.end(), *order_rng);
        std::shuffle(branch_order.begin(), branch_order.end(), *order_rng);
    }

    auto line_id = [](int i) { return "L" + std::to_string(i); };
    for (int i : comp_order)
        builder.component(line_id(i));
    for (int b : branch_order)
        builder.branch("b" + std::to_string(b));

    for (int i = 0; i < lines; ++i)
        builder.stratum("s" + line_id(i), {line_id(i)}, {}, 0, 0, {}, {1});

    std::map<std::pair<int, int>, int> copies;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [i, j] = edges[e];
        auto key = std::minmax(i, j);
        const int copy = copies[{key.first, key.second}]++;
        const std::string id = "n" + std::to_string(e);
        builder.stratum(id, {line_id(key.first), line_id(key.second)}, {}, copy, 1, {1}, {});
        builder.incidence_auto(id, "s" + line_id(key.first));
        builder.incidence_auto(id, "s" + line_id(key.second));
        builder.restriction("s" + line_id(key.first), id, empty_class_map());
        builder.restriction("s" + line_id(key.second), id, empty_class_map());
    }
    for (std::size_t b = 0; b < boundary_points_on.size(); ++b) {
        const std::string id = "p" + std::to_string(b);
        const std::string on = line_id(boundary_points_on[b]);
        builder.stratum(id, {on}, {"b" + std::to_string(b)}, 0, 1, {1}, {});
        builder.incidence_auto(id, "s" + on);
        builder.restriction("s" + on, id, empty_class_map());
    }
    return builder.finish();
}

}  // namespace

ModelBundle smooth_product(const std::string& name, const std::vector<int>& factor_dims) {
    int dim = 0;
    for (int d : factor_dims)
        dim += d;
    BundleBuilder builder(name, dim);
    builder.component("X");
    builder.stratum("sX", {"X"}, {}, 0, 0, {}, factor_dims);
    auto bundle = builder.finish();
    bundle.description = "smooth product of projective spaces";
    return bundle;
}

ModelBundle nodal_curve() {
    auto bundle = line_configuration("nodal-curve", 2, {{0, 1}}, {}, nullptr);
    bundle.description = "two lines meeting in one node";
    return bundle;
}

ModelBundle chain_of_lines(int n) {
    if (n < 1)
        throw std::invalid_argument("chain_of_lines needs n >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i)
        edges.push_back({i, i + 1});
    auto bundle = line_configuration("chain-" + std::to_string(n) + "-lines", n, edges, {}, nullptr);
    bundle.description = "chain of " + std::to_string(n) + " lines";
    return bundle;
}

ModelBundle cycle_of_lines(int n) {
    if (n < 2)
        throw std::invalid_argument("cycle_of_lines needs n >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back({i, (i + 1) % n});
    auto bundle = line_configuration("cycle-" + std::to_string(n) + "-lines", n, edges, {}, nullptr);
    bundle.description = "cycle of " + std::to_string(n) + " lines, dual complex a circle";
    return bundle;
}

ModelBundle p1_with_boundary_points(int points) {
    std::vector<int> on(points, 0);
    auto bundle = line_configuration("p1-" + std::to_string(points) + "-points", 1, {}, on, nullptr);
    bundle.description = "P^1 with " + std::to_string(points) + " boundary points";
    return bundle;
}

ModelBundle nodal_with_boundary_point() {
    auto bundle = line_configuration("nodal-boundary", 2, {{0, 1}}, {0}, nullptr);
    bundle.description = "nodal curve with one boundary point on the first line";
    return bundle;
}

ModelBundle p2_with_lines(int lines) {
    if (lines < 1 || lines > 2)
        throw std::invalid_argument("p2_with_lines supports 1 or 2 lines");
    BundleBuilder builder("p2-" + std::to_string(lines) + "-lines", 2);
    builder.component("X");
    for (int i = 0; i < lines; ++i)
        builder.branch("l" + std::to_string(i));
    builder.stratum("sX", {"X"}, {}, 0, 0, {}, {2});
    for (int i = 0; i < lines; ++i) {
        const std::string id = "sl" + std::to_string(i);
        builder.stratum(id, {"X"}, {"l" + std::to_string(i)}, 0, 1, {1}, {1});
        builder.incidence_auto(id, "sX");
        builder.restriction("sX", id, {{Int(1)}});
    }
    if (lines == 2) {
        builder.stratum("spt", {"X"}, {"l0", "l1"}, 0, 2, {1, 1}, {});
        builder.incidence_auto("spt", "sl0");
        builder.incidence_auto("spt", "sl1");
        builder.restriction("sl0", "spt", empty_class_map());
        builder.restriction("sl1", "spt", empty_class_map());
    }
    auto bundle = builder.finish();
    bundle.description = "P^2 with " + std::to_string(lines) + " boundary lines";
    return bundle;
}

ModelBundle product_bundle(const std::string& name, const ModelBundle& a, const ModelBundle& b) {
    const int dim_a = a.model.components.empty() ? 0 : a.model.components[0].dim;
    const int dim_b = b.model.components.empty() ? 0 : b.model.components[0].dim;
    BundleBuilder builder(name, dim_a + dim_b);

    auto left_branch = [](const std::string& id) { return id + "*"; };
    auto right_branch = [](const std::string& id) { return "*" + id; };
    auto pair_id = [](const std::string& x, const std::string& y) { return x + "*" + y; };

    for (const auto& ca : a.model.components)
        for (const auto& cb : b.model.components)
            builder.component(pair_id(ca.id, cb.id));
    for (const auto& br : a.model.b_branch_ids)
        builder.branch(left_branch(br));
    for (const auto& br : b.model.b_branch_ids)
        builder.branch(right_branch(br));

    auto factors_of = [](const ModelBundle& bundle, const Stratum& s) {
        return bundle.hodge.cohomology.at(s.id).projective_factors;
    };

    std::map<std::pair<std::vector<std::string>, std::vector<std::string>>, int> copies;
    for (const auto& sa : a.model.strata)
        for (const auto& sb : b.model.strata) {
            std::vector<std::string> comps;
            for (const auto& ca : sa.components)
                for (const auto& cb : sb.components)
                    comps.push_back(pair_id(ca, cb));
            std::vector<std::string> branches;
            for (const auto& br : sa.b_branches)
                branches.push_back(left_branch(br));
            for (const auto& br : sb.b_branches)
                branches.push_back(right_branch(br));
            std::vector<int> factor_type = sa.factor_type;
            factor_type.insert(factor_type.end(), sb.factor_type.begin(), sb.factor_type.end());
            std::vector<int> projective = factors_of(a, sa);
            const auto pb = factors_of(b, sb);
            projective.insert(projective.end(), pb.begin(), pb.end());

            auto sorted_comps = comps;
            auto sorted_branches = branches;
            std::sort(sorted_comps.begin(), sorted_comps.end());
            std::sort(sorted_branches.begin(), sorted_branches.end());
            const int copy = copies[{sorted_comps, sorted_branches}]++;
            builder.stratum(pair_id(sa.id, sb.id), comps, branches, copy,
                            sa.codim + sb.codim, factor_type, projective);
        }

    auto identity_map = [](std::size_t n) {
        std::vector<std::vector<Int>> id(n, std::vector<Int>(n));
        for (std::size_t i = 0; i < n; ++i)
            id[i][i] = 1;
        return id;
    };
    auto block_diag = [](const std::vector<std::vector<Int>>& m1, std::size_t rows2,
                         const std::vector<std::vector<Int>>& m2, std::size_t cols1) {
        const std::size_t rows1 = m1.size();
        const std::size_t cols2 = m2.empty() ? 0 : m2[0].size();
        std::vector<std::vector<Int>> out(rows1 + rows2, std::vector<Int>(cols1 + cols2));
        for (std::size_t i = 0; i < rows1; ++i)
            for (std::size_t j = 0; j < cols1; ++j)
                out[i][j] = m1[i][j];
        for (std::size_t i = 0; i < rows2; ++i)
            for (std::size_t j = 0; j < cols2; ++j)
                out[rows1 + i][cols1 + j] = m2[i][j];
        return out;
    };

    // First-factor covers keep their sign; second-factor covers pick up
    // (-1)^codim of the first factor.
    for (const auto& inc : a.model.incidences)
        for (const auto& sb : b.model.strata) {
            builder.incidence(pair_id(inc.lower, sb.id), pair_id(inc.upper, sb.id), inc.sign);
            const auto& cm = a.class_maps.at({inc.upper, inc.lower});
            const std::size_t gens_b = factors_of(b, sb).size();
            const std::size_t cols1 = cm.empty() ? 0 : cm[0].size();
            builder.restriction(pair_id(inc.upper, sb.id), pair_id(inc.lower, sb.id),
                                block_diag(cm, gens_b, identity_map(gens_b), cols1));
        }
    for (const auto& inc : b.model.incidences)
        for (const auto& sa : a.model.strata) {
            const int sign = (sa.codim % 2 == 0 ? 1 : -1) * inc.sign;
            builder.incidence(pair_id(sa.id, inc.lower), pair_id(sa.id, inc.upper), sign);
            const auto& cm = b.class_maps.at({inc.upper, inc.lower});
            const std::size_t gens_a = factors_of(a, sa).size();
            builder.restriction(pair_id(sa.id, inc.upper), pair_id(sa.id, inc.lower),
                                block_diag(identity_map(gens_a), cm.size(), cm, gens_a));
        }

    auto bundle = builder.finish();
    bundle.description = "product of " + a.name + " and " + b.name;
    return bundle;
}

std::vector<ModelBundle> bundled_examples() {
    std::vector<ModelBundle> corpus;
    corpus.push_back(smooth_product("smooth-p2", {2}));
    corpus.back().description = "smooth P^2";
    corpus.push_back(smooth_product("smooth-p1xp1", {1, 1}));
    corpus.back().description = "smooth P^1 x P^1";
    corpus.push_back(nodal_curve());
    corpus.push_back(cycle_of_lines(3));
    {
        auto cxc = product_bundle("cxc", nodal_curve(), nodal_curve());
        cxc.description = "level-2 square model: nodal curve times nodal curve";
        corpus.push_back(std::move(cxc));
    }
    {
        auto cstar = p1_with_boundary_points(2);
        cstar.name = "p1-two-points";
        cstar.description = "P^1 with B = {0} + {infinity}; X minus B is C^*";
        QDivisor d;
        d.id = "L";
        d.coefficients = {{"b0", Rational(3, 4)}, {"b1", Rational(5, 6)}};
        cstar.divisors.push_back(std::move(d));
        corpus.push_back(std::move(cstar));
    }
    corpus.push_back(nodal_with_boundary_point());
    corpus.push_back(p2_with_lines(2));
    return corpus;
}

namespace {

ModelBundle random_block(std::mt19937_64& rng, int max_strata, std::mt19937_64* order_rng) {
    auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    for (;;) {
        ModelBundle bundle;
        switch (pick(0, 5)) {
            case 0:
                bundle = smooth_product("block-smooth", {pick(1, 2)});
                break;
            case 1: {  // chain with optional boundary points
                const int n = pick(1, 4);
                std::vector<std::pair<int, int>> edges;
                for (int i = 0; i + 1 < n; ++i)
                    edges.push_back({i, i + 1});
                std::vector<int> pts;
                for (int k = pick(0, 2); k > 0; --k)
                    pts.push_back(pick(0, n - 1));
                bundle = line_configuration("block-chain", n, edges, pts, order_rng);
                break;
            }
            case 2: {  // cycle with optional boundary points
                const int n = pick(2, 4);
                std::vector<std::pair<int, int>> edges;
                for (int i = 0; i < n; ++i)
                    edges.push_back({i, (i + 1) % n});
                std::vector<int> pts;
                for (int k = pick(0, 2); k > 0; --k)
                    pts.push_back(pick(0, n - 1));
                bundle = line_configuration("block-cycle", n, edges, pts, order_rng);
                break;
            }
            case 3:
                bundle = p1_with_boundary_points(pick(1, 2));
                break;
            case 4:
                bundle = p2_with_lines(pick(1, 2));
                break;
            default:
                bundle = nodal_with_boundary_point();
                break;
        }
        if (static_cast<int>(bundle.model.strata.size()) <= max_strata)
            return bundle;
    }
}

ModelBundle random_bundle_impl(std::uint64_t seed, std::mt19937_64* order_rng) {
    std::mt19937_64 rng(seed);
    const int factors = rng() % 2 == 0 ? 1 : 2;
    ModelBundle bundle;
    if (factors == 1) {
        bundle = random_block(rng, 14, order_rng);
    } else {
        auto a = random_block(rng, 6, order_rng);
        auto b = random_block(rng, 5, order_rng);
        bundle = product_bundle("block-product", a, b);
    }
    bundle.name = "random-" + std::to_string(seed);
    bundle.description = "randomly generated valid pair model";
    return bundle;
}

}  // namespace

ModelBundle random_bundle(std::uint64_t seed) { return random_bundle_impl(seed, nullptr); }

ModelBundle random_bundle(std::uint64_t seed, std::uint64_t order_seed) {
    std::mt19937_64 order(order_seed);
    return random_bundle_impl(seed, &order);
}

GsncModel gauge_twist(const GsncModel& model, const std::vector<int>& stratum_gauge) {
    if (stratum_gauge.size() != model.strata.size())
        throw std::invalid_argument("gauge vector size mismatch");
    GsncModel out = model;
    std::map<std::string, int> gauge;
    for (std::size_t i = 0; i < model.strata.size(); ++i)
        gauge[model.strata[i].id] = stratum_gauge[i] >= 0 ? 1 : -1;
    for (auto& inc : out.incidences)
        inc.sign *= gauge.at(inc.lower) * gauge.at(inc.upper);
    return out;
}

}  // namespace gsnc
