#include "gsnc/model.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace gsnc {

std::string ValidationReport::to_string() const {
    if (issues.empty())
        return "valid";
    std::ostringstream out;
    for (const auto& issue : issues)
        out << issue.code << ": " << issue.message << "\n";
    return out.str();
}

namespace {

std::map<std::string, int> index_by_id(const std::vector<Stratum>& strata) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < strata.size(); ++i)
        index.emplace(strata[i].id, static_cast<int>(i));
    return index;
}

bool subset_of(const std::vector<std::string>& small, const std::vector<std::string>& big) {
    for (const auto& s : small)
        if (std::find(big.begin(), big.end(), s) == big.end())
            return false;
    return true;
}

}  // namespace

Poset::Poset(const GsncModel& model) : model_(&model) {
    const auto n = model.strata.size();
    up_.resize(n);
    down_.resize(n);
    anc_.resize(n);
    x_anchor_.resize(n);

    auto index = index_by_id(model.strata);
    for (const auto& inc : model.incidences) {
        auto lo = index.find(inc.lower);
        auto hi = index.find(inc.upper);
        if (lo == index.end() || hi == index.end())
            throw std::invalid_argument("incidence references unknown stratum");
        up_[lo->second].push_back({hi->second, inc.sign});
        down_[hi->second].push_back({lo->second, inc.sign});
    }

    // Reflexive ancestor sets by upward closure.
    for (std::size_t i = 0; i < n; ++i) {
        std::set<int> seen{static_cast<int>(i)};
        std::vector<int> queue{static_cast<int>(i)};
        while (!queue.empty()) {
            int cur = queue.back();
            queue.pop_back();
            for (const auto& cov : up_[cur])
                if (seen.insert(cov.stratum).second)
                    queue.push_back(cov.stratum);
        }
        anc_[i].assign(seen.begin(), seen.end());
    }

    // Minimal X-proper ancestor: unique X-proper ancestor of maximal codim
    // that all other X-proper ancestors contain.
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> x_anc;
        for (int a : anc_[i])
            if (model.strata[a].b_branches.empty())
                x_anc.push_back(a);
        if (x_anc.empty())
            continue;
        int best = x_anc.front();
        for (int a : x_anc)
            if (model.strata[a].codim > model.strata[best].codim)
                best = a;
        bool unique = true;
        for (int a : x_anc)
            if (!contains(best, a))
                unique = false;
        if (unique)
            x_anchor_[i] = best;
    }
}

int Poset::stratum_index(const std::string& id) const {
    for (std::size_t i = 0; i < model_->strata.size(); ++i)
        if (model_->strata[i].id == id)
            return static_cast<int>(i);
    return -1;
}

bool Poset::contains(int small, int big) const {
    const auto& a = anc_[small];
    return std::binary_search(a.begin(), a.end(), big);
}

bool Poset::is_x_proper(int i) const {
    return model_->strata[i].b_branches.empty();
}

int insertion_sign(const std::vector<std::string>& branch_order,
                   const std::vector<std::string>& component_order,
                   const std::vector<std::string>& upper_branches,
                   const std::vector<std::string>& upper_components,
                   const std::string& added, bool added_is_branch) {
    auto rank = [&](const std::string& id, bool is_branch) {
        if (is_branch) {
            auto it = std::find(branch_order.begin(), branch_order.end(), id);
            return static_cast<int>(it - branch_order.begin());
        }
        auto it = std::find(component_order.begin(), component_order.end(), id);
        return static_cast<int>(branch_order.size() + (it - component_order.begin()));
    };
    const int added_rank = rank(added, added_is_branch);
    int below = 0;
    for (const auto& b : upper_branches)
        if (rank(b, true) < added_rank)
            ++below;
    for (const auto& c : upper_components)
        if (rank(c, false) < added_rank)
            ++below;
    return below % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Face-poset verification.
//
// The dual cell of a stratum is a product of simplices coming from the local
// equations of X, times one "half-open" edge per B-cut: the branch side of
// such an edge is not a stratum, so its face poset contributes a two-element
// chain instead of a full 1-simplex.
// ---------------------------------------------------------------------------

namespace {

struct GradedPoset {
    std::vector<int> dim;
    std::vector<std::vector<int>> covers;   // x -> faces one dim below
    std::vector<std::vector<int>> cocovers; // x -> cells one dim above
};

GradedPoset reference_cell_poset(const std::vector<int>& simplex_dims, int chain_factors) {
    // Elements are tuples: a nonempty vertex bitmask per simplex factor and a
    // 0/1 level per chain factor (1 = cut still present).
    struct Shape {
        bool chain;
        int verts;  // simplex factors only
    };
    std::vector<Shape> shape;
    for (int a : simplex_dims)
        shape.push_back({false, a + 1});
    for (int c = 0; c < chain_factors; ++c)
        shape.push_back({true, 0});

    std::vector<std::vector<std::uint32_t>> elems;
    std::vector<std::uint32_t> current(shape.size());
    std::function<void(std::size_t)> gen = [&](std::size_t f) {
        if (f == shape.size()) {
            elems.push_back(current);
            return;
        }
        if (shape[f].chain) {
            for (std::uint32_t v = 0; v <= 1; ++v) {
                current[f] = v;
                gen(f + 1);
            }
        } else {
            const std::uint32_t full = (1u << shape[f].verts) - 1;
            for (std::uint32_t mask = 1; mask <= full; ++mask) {
                current[f] = mask;
                gen(f + 1);
            }
        }
    };
    gen(0);

    auto elem_dim = [&](const std::vector<std::uint32_t>& e) {
        int d = 0;
        for (std::size_t f = 0; f < shape.size(); ++f)
            d += shape[f].chain ? static_cast<int>(e[f])
                                : __builtin_popcount(e[f]) - 1;
        return d;
    };

    GradedPoset poset;
    poset.dim.resize(elems.size());
    poset.covers.resize(elems.size());
    poset.cocovers.resize(elems.size());
    std::map<std::vector<std::uint32_t>, int> lookup;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        poset.dim[i] = elem_dim(elems[i]);
        lookup.emplace(elems[i], static_cast<int>(i));
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t f = 0; f < shape.size(); ++f) {
            auto facet = elems[i];
            if (shape[f].chain) {
                if (facet[f] == 1) {
                    facet[f] = 0;
                    int j = lookup.at(facet);
                    poset.covers[i].push_back(j);
                    poset.cocovers[j].push_back(static_cast<int>(i));
                }
            } else {
                for (int v = 0; v < shape[f].verts; ++v) {
                    const std::uint32_t mask = elems[i][f] & ~(1u << v);
                    if (mask == 0 || mask == elems[i][f])
                        continue;
                    facet[f] = mask;
                    int j = lookup.at(facet);
                    poset.covers[i].push_back(j);
                    poset.cocovers[j].push_back(static_cast<int>(i));
                    facet[f] = elems[i][f];
                }
            }
        }
    }
    return poset;
}

// Graded-poset isomorphism by backtracking on elements of descending dim.
bool graded_isomorphic(const GradedPoset& a, const GradedPoset& b) {
    if (a.dim.size() != b.dim.size())
        return false;
    std::map<int, int> count_a, count_b;
    for (int d : a.dim)
        ++count_a[d];
    for (int d : b.dim)
        ++count_b[d];
    if (count_a != count_b)
        return false;

    std::vector<int> order(a.dim.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a.dim[x] > a.dim[y]; });

    std::vector<int> image(a.dim.size(), -1);
    std::vector<bool> used(b.dim.size(), false);

    std::function<bool(std::size_t)> match = [&](std::size_t k) {
        if (k == order.size())
            return true;
        const int u = order[k];
        for (std::size_t t = 0; t < b.dim.size(); ++t) {
            if (used[t] || b.dim[t] != a.dim[u])
                continue;
            if (a.covers[u].size() != b.covers[t].size() ||
                a.cocovers[u].size() != b.cocovers[t].size())
                continue;
            bool consistent = true;
            for (int v : a.cocovers[u]) {
                if (image[v] < 0)
                    continue;  // processed in descending dim, so cocovers come first
                const auto& bc = b.cocovers[t];
                if (std::find(bc.begin(), bc.end(), image[v]) == bc.end()) {
                    consistent = false;
                    break;
                }
            }
            if (!consistent)
                continue;
            image[u] = static_cast<int>(t);
            used[t] = true;
            if (match(k + 1))
                return true;
            image[u] = -1;
            used[t] = false;
        }
        return false;
    };
    return match(0);
}

}  // namespace

ValidationReport validate_model(const GsncModel& model) {
    ValidationReport report;

    // Stage 1: reference integrity. Deeper checks need resolvable ids.
    if (model.components.empty())
        report.add("empty-model", "a model must declare at least one component");

    std::set<std::string> component_ids, branch_ids, stratum_ids;
    for (const auto& c : model.components)
        if (!component_ids.insert(c.id).second)
            report.add("duplicate-id", "component id '" + c.id + "' declared twice");
    for (const auto& b : model.b_branch_ids)
        if (!branch_ids.insert(b).second)
            report.add("duplicate-id", "b-branch id '" + b + "' declared twice");
    for (const auto& s : model.strata)
        if (!stratum_ids.insert(s.id).second)
            report.add("duplicate-id", "stratum id '" + s.id + "' declared twice");

    for (std::size_t i = 1; i < model.components.size(); ++i)
        if (model.components[i].dim != model.components[0].dim)
            report.add("unequal-dims", "component '" + model.components[i].id +
                                           "' breaks local equidimensionality");

    bool refs_ok = true;
    for (const auto& s : model.strata) {
        for (const auto& c : s.components)
            if (!component_ids.count(c)) {
                report.add("unknown-id", "stratum '" + s.id + "' references unknown component '" + c + "'");
                refs_ok = false;
            }
        for (const auto& b : s.b_branches)
            if (!branch_ids.count(b)) {
                report.add("unknown-id", "stratum '" + s.id + "' references unknown b-branch '" + b + "'");
                refs_ok = false;
            }
        if (s.components.empty())
            report.add("empty-support", "stratum '" + s.id + "' lies in no component");
        if (std::set<std::string>(s.components.begin(), s.components.end()).size() != s.components.size())
            report.add("duplicate-member", "stratum '" + s.id + "' lists a component twice");
        if (std::set<std::string>(s.b_branches.begin(), s.b_branches.end()).size() != s.b_branches.size())
            report.add("duplicate-member", "stratum '" + s.id + "' lists a b-branch twice");
    }
    for (const auto& inc : model.incidences) {
        if (!stratum_ids.count(inc.lower) || !stratum_ids.count(inc.upper)) {
            report.add("unknown-id", "incidence (" + inc.lower + " < " + inc.upper +
                                         ") references an unknown stratum");
            refs_ok = false;
        }
        if (inc.sign != 1 && inc.sign != -1)
            report.add("bad-sign", "incidence (" + inc.lower + " < " + inc.upper +
                                       ") must carry sign +1 or -1");
    }
    if (!refs_ok || model.components.empty())
        return report;

    const int dim = model.components.empty() ? 0 : model.components[0].dim;
    auto index = index_by_id(model.strata);

    // Stage 2: per-stratum bookkeeping.
    std::set<std::tuple<std::vector<std::string>, std::vector<std::string>, int>> support_keys;
    for (const auto& s : model.strata) {
        if (s.codim < 0 || s.codim > dim)
            report.add("codim-range", "stratum '" + s.id + "' has codim outside [0, dim]");
        int cell_dim = std::accumulate(s.factor_type.begin(), s.factor_type.end(), 0);
        if (cell_dim != s.codim)
            report.add("factor-sum", "stratum '" + s.id + "': factor_type sums to " +
                                         std::to_string(cell_dim) + ", codim is " +
                                         std::to_string(s.codim));
        for (int f : s.factor_type)
            if (f < 1)
                report.add("factor-entry", "stratum '" + s.id + "' has a non-positive simplex factor");
        auto sx = s.components;
        auto sb = s.b_branches;
        std::sort(sx.begin(), sx.end());
        std::sort(sb.begin(), sb.end());
        if (!support_keys.insert({sx, sb, s.copy_index}).second)
            report.add("duplicate-copy", "stratum '" + s.id +
                                             "' duplicates another stratum's support and copy_index");
    }

    // X^[0] must be exactly the set of components.
    std::set<std::string> seen_top;
    for (const auto& s : model.strata) {
        if (s.codim != 0)
            continue;
        if (s.components.size() != 1 || !s.b_branches.empty())
            report.add("top-stratum", "codim-0 stratum '" + s.id + "' is not a single component");
        else if (!seen_top.insert(s.components[0]).second)
            report.add("top-stratum", "component '" + s.components[0] + "' has two codim-0 strata");
    }
    for (const auto& c : model.components)
        if (!seen_top.count(c.id))
            report.add("top-stratum", "component '" + c.id + "' has no codim-0 stratum");

    // Stage 3: incidence structure.
    std::set<std::pair<std::string, std::string>> inc_pairs;
    for (const auto& inc : model.incidences) {
        const auto& lo = model.strata[index.at(inc.lower)];
        const auto& hi = model.strata[index.at(inc.upper)];
        if (inc.lower == inc.upper)
            report.add("self-incidence", "stratum '" + inc.lower + "' is incident to itself");
        if (!inc_pairs.insert({inc.lower, inc.upper}).second)
            report.add("duplicate-incidence",
                       "incidence (" + inc.lower + " < " + inc.upper + ") declared twice");
        if (lo.codim != hi.codim + 1)
            report.add("not-cover", "incidence (" + inc.lower + " < " + inc.upper +
                                        ") is not a cover relation in codimension");
        if (!subset_of(hi.components, lo.components) || !subset_of(hi.b_branches, lo.b_branches))
            report.add("containment", "incidence (" + inc.lower + " < " + inc.upper +
                                          "): lower support does not contain upper support");
        else if (hi.components.size() == lo.components.size() &&
                 hi.b_branches.size() == lo.b_branches.size())
            report.add("containment", "incidence (" + inc.lower + " < " + inc.upper +
                                          "): supports are equal");
    }
    if (!report.ok())
        return report;  // poset-level checks assume sane covers

    Poset poset(model);
    const auto n = model.strata.size();

    // Reachability from the components.
    for (std::size_t i = 0; i < n; ++i) {
        bool reaches_top = false;
        for (int a : poset.ancestors(static_cast<int>(i)))
            if (model.strata[a].codim == 0)
                reaches_top = true;
        if (!reaches_top)
            report.add("unreachable", "stratum '" + model.strata[i].id +
                                          "' is not connected to any component");
    }

    // Signed boundary squares to zero on every codim-2 interval.
    for (std::size_t i = 0; i < n; ++i) {
        std::map<int, int> square_sum;  // grandparent -> sum of sign products
        for (const auto& c1 : poset.covers_up(static_cast<int>(i)))
            for (const auto& c2 : poset.covers_up(c1.stratum))
                square_sum[c2.stratum] += c1.sign * c2.sign;
        for (const auto& [gp, sum] : square_sum)
            if (sum != 0)
                report.add("sign-square", "incidence signs between '" + model.strata[i].id +
                                              "' and '" + model.strata[gp].id +
                                              "' do not anticommute");
    }

    // Pair structure: unique minimal X-proper ancestor, well-typed covers.
    for (std::size_t i = 0; i < n; ++i) {
        if (!poset.min_x_ancestor(static_cast<int>(i))) {
            report.add("x-anchor", "stratum '" + model.strata[i].id +
                                       "' has no unique minimal X-proper stratum containing it");
        }
    }
    if (!report.ok())
        return report;

    auto anchor_codim = [&](int i) {
        return model.strata[*poset.min_x_ancestor(i)].codim;
    };
    for (const auto& inc : model.incidences) {
        int lo = index.at(inc.lower), hi = index.at(inc.upper);
        int jump = anchor_codim(lo) - anchor_codim(hi);
        if (jump != 0 && jump != 1)
            report.add("cover-type", "incidence (" + inc.lower + " < " + inc.upper +
                                         ") is neither a component cut nor a single B-cut");
    }

    // Dual cells are products of simplices (X-cuts), times a two-element
    // chain per B-cut. Checked by explicit poset enumeration on each up-set.
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = model.strata[static_cast<int>(i)];
        const int b_cuts = s.codim - anchor_codim(static_cast<int>(i));
        std::vector<int> simplex_dims;
        int ones_left = b_cuts;
        bool shape_ok = true;
        // B-cuts consume '1' entries of factor_type; the rest is the X-cell.
        std::vector<int> sorted_ft = s.factor_type;
        std::sort(sorted_ft.begin(), sorted_ft.end());
        for (int f : sorted_ft) {
            if (f == 1 && ones_left > 0)
                --ones_left;
            else
                simplex_dims.push_back(f);
        }
        if (ones_left > 0) {
            report.add("factor-type", "stratum '" + s.id + "' has " + std::to_string(b_cuts) +
                                          " B-cuts but too few unit factors");
            shape_ok = false;
        }
        if (!shape_ok)
            continue;

        const auto& up = poset.ancestors(static_cast<int>(i));
        std::map<int, int> local;
        for (std::size_t k = 0; k < up.size(); ++k)
            local.emplace(up[k], static_cast<int>(k));
        GradedPoset actual;
        actual.dim.resize(up.size());
        actual.covers.resize(up.size());
        actual.cocovers.resize(up.size());
        for (std::size_t k = 0; k < up.size(); ++k) {
            actual.dim[k] = model.strata[up[k]].codim;
            for (const auto& cov : poset.covers_up(up[k])) {
                auto it = local.find(cov.stratum);
                if (it == local.end())
                    continue;
                actual.covers[k].push_back(it->second);
                actual.cocovers[it->second].push_back(static_cast<int>(k));
            }
        }
        GradedPoset expected = reference_cell_poset(simplex_dims, b_cuts);
        if (!graded_isomorphic(actual, expected))
            report.add("cell-shape", "face poset above stratum '" + s.id +
                                         "' is not a product of simplices of its factor_type");
    }

    return report;
}

std::vector<Stratum> strata_of_codim(const GsncModel& model, int n) {
    std::vector<Stratum> out;
    for (const auto& s : model.strata)
        if (s.codim == n)
            out.push_back(s);
    return out;
}

int level(const GsncModel& model) {
    int lvl = 0;
    for (const auto& s : model.strata)
        lvl = std::max(lvl, static_cast<int>(s.factor_type.size()));
    return lvl;
}

int mv_sign(const GsncModel& model, const std::string& sub, const std::string& super) {
    for (const auto& inc : model.incidences)
        if (inc.lower == sub && inc.upper == super)
            return inc.sign;
    throw std::invalid_argument("not an incidence");
}

}  // namespace gsnc
