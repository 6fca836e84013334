#include "gsnc/hodge.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gsnc {

int StratumCohomology::betti(int degree) const {
    int b = 0;
    for (const auto& [key, d] : dims)
        if (key.first == degree)
            b += d;
    return b;
}

long long StratumCohomology::euler_characteristic() const {
    long long chi = 0;
    for (const auto& [key, d] : dims)
        chi += (key.first % 2 == 0 ? d : -d);
    return chi;
}

const StratumCohomology* HodgeAssignment::stratum(const std::string& id) const {
    auto it = cohomology.find(id);
    return it == cohomology.end() ? nullptr : &it->second;
}

const GradedMap* HodgeAssignment::restriction(const std::string& source,
                                              const std::string& target) const {
    for (const auto& m : restrictions)
        if (m.source == source && m.target == target)
            return &m;
    return nullptr;
}

const GradedMap* HodgeAssignment::gysin(const std::string& source,
                                        const std::string& target) const {
    for (const auto& m : gysins)
        if (m.source == source && m.target == target)
            return &m;
    return nullptr;
}

const PdPairing* HodgeAssignment::pairing(const std::string& id) const {
    auto it = pairings.find(id);
    return it == pairings.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Monomial bases for products of projective spaces.
// ---------------------------------------------------------------------------

namespace {

using Exponents = std::vector<int>;

// Exponent tuples of total degree m, lex order with h1 > h2 > ...
std::vector<Exponents> monomials_of_degree(const std::vector<int>& factor_dims, int m) {
    std::vector<Exponents> out;
    Exponents current(factor_dims.size(), 0);
    std::function<void(std::size_t, int)> gen = [&](std::size_t i, int left) {
        if (i == factor_dims.size()) {
            if (left == 0)
                out.push_back(current);
            return;
        }
        const int cap = std::min(factor_dims[i], left);
        for (int e = cap; e >= 0; --e) {  // descending: h1-heavy monomials first
            current[i] = e;
            gen(i + 1, left - e);
        }
    };
    gen(0, m);
    return out;
}

std::string monomial_label(const Exponents& e) {
    std::string label;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!label.empty())
            label += "*";
        label += "h" + std::to_string(i + 1);
        if (e[i] > 1)
            label += "^" + std::to_string(e[i]);
    }
    return label.empty() ? "1" : label;
}

// Sparse polynomial in the hyperplane classes, truncated by factor dims.
using Poly = std::map<Exponents, Rational>;

Poly poly_times_linear(const Poly& p, const std::vector<Rational>& linear,
                       const std::vector<int>& factor_dims) {
    Poly out;
    for (const auto& [e, c] : p) {
        for (std::size_t j = 0; j < linear.size(); ++j) {
            if (linear[j] == 0)
                continue;
            Exponents e2 = e;
            if (++e2[j] > factor_dims[j])
                continue;  // h_j^m = 0 beyond the factor dimension
            out[e2] += c * linear[j];
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

std::map<Exponents, int> index_monomials(const std::vector<Exponents>& monomials) {
    std::map<Exponents, int> index;
    for (std::size_t i = 0; i < monomials.size(); ++i)
        index.emplace(monomials[i], static_cast<int>(i));
    return index;
}

QMatrix block_or_zero(const std::map<HodgeKey, QMatrix>& blocks, HodgeKey key,
                      std::size_t rows, std::size_t cols) {
    auto it = blocks.find(key);
    if (it != blocks.end())
        return it->second;
    return QMatrix(rows, cols);
}

}  // namespace

ModelStratumData make_projective_product(const std::vector<int>& factor_dims) {
    for (int d : factor_dims)
        if (d < 0)
            throw std::invalid_argument("negative projective factor dimension");

    ModelStratumData data;
    auto& coh = data.cohomology;
    coh.projective_factors = factor_dims;
    coh.is_model_stratum = true;
    coh.dimension = std::accumulate(factor_dims.begin(), factor_dims.end(), 0);

    const int d = coh.dimension;
    std::vector<std::vector<Exponents>> by_degree(d + 1);
    for (int m = 0; m <= d; ++m) {
        by_degree[m] = monomials_of_degree(factor_dims, m);
        if (by_degree[m].empty())
            continue;
        coh.dims[{2 * m, m}] = static_cast<int>(by_degree[m].size());
        auto& labels = coh.basis_labels[{2 * m, m}];
        for (const auto& e : by_degree[m])
            labels.push_back(monomial_label(e));
    }

    // <h^e, h^f> = 1 exactly when e + f is the top monomial.
    data.pairing.stratum = coh.stratum;
    for (int m = 0; m <= d; ++m) {
        const auto& rows = by_degree[m];
        const auto& cols = by_degree[d - m];
        if (rows.empty() || cols.empty())
            continue;
        QMatrix p(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) {
                bool top = true;
                for (std::size_t f = 0; f < factor_dims.size(); ++f)
                    if (rows[i][f] + cols[j][f] != factor_dims[f])
                        top = false;
                if (top)
                    p.at(i, j) = 1;
            }
        data.pairing.blocks[{2 * m, m}] = std::move(p);
    }
    return data;
}

GradedMap restriction_from_class_map(const StratumCohomology& source,
                                     const StratumCohomology& target,
                                     const std::vector<std::vector<Int>>& class_images) {
    if (!source.is_model_stratum || !target.is_model_stratum)
        throw std::invalid_argument("class-map restrictions need model strata on both sides");
    const auto& src_factors = source.projective_factors;
    const auto& tgt_factors = target.projective_factors;
    if (class_images.size() != src_factors.size())
        throw std::invalid_argument("class_images row count does not match source factors");
    for (const auto& row : class_images)
        if (row.size() != tgt_factors.size())
            throw std::invalid_argument("class_images column count does not match target factors");

    GradedMap map;
    map.source = source.stratum;
    map.target = target.stratum;
    map.kind = MapKind::restriction;

    std::vector<std::vector<Rational>> linear(src_factors.size(),
                                              std::vector<Rational>(tgt_factors.size()));
    for (std::size_t i = 0; i < src_factors.size(); ++i)
        for (std::size_t j = 0; j < tgt_factors.size(); ++j)
            linear[i][j] = Rational(class_images[i][j]);

    for (int m = 0; m <= source.dimension; ++m) {
        const auto src_monomials = monomials_of_degree(src_factors, m);
        if (src_monomials.empty())
            continue;
        const auto tgt_monomials = monomials_of_degree(tgt_factors, m);
        const auto tgt_index = index_monomials(tgt_monomials);
        QMatrix block(src_monomials.size(), tgt_monomials.size());
        for (std::size_t i = 0; i < src_monomials.size(); ++i) {
            Poly image{{Exponents(tgt_factors.size(), 0), Rational(1)}};
            for (std::size_t f = 0; f < src_factors.size(); ++f)
                for (int rep = 0; rep < src_monomials[i][f]; ++rep)
                    image = poly_times_linear(image, linear[f], tgt_factors);
            for (const auto& [e, c] : image)
                block.at(i, tgt_index.at(e)) = c;
        }
        map.blocks[{2 * m, m}] = std::move(block);
    }
    return map;
}

GradedMap gysin_from_pd(const GradedMap& restriction,
                        const StratumCohomology& source,
                        const StratumCohomology& target,
                        const PdPairing& source_pairing,
                        const PdPairing& target_pairing) {
    if (restriction.kind != MapKind::restriction)
        throw std::invalid_argument("gysin_from_pd expects a restriction map");
    const int d = source.dimension;
    const int d_dash = target.dimension;
    if (d_dash + 1 != d)
        throw std::invalid_argument("gysin_from_pd handles codimension-one inclusions");

    GradedMap gys;
    gys.source = restriction.target;
    gys.target = restriction.source;
    gys.kind = MapKind::gysin;

    for (const auto& [key, dim_tgt_block] : target.dims) {
        const auto [k, a] = key;
        if (dim_tgt_block == 0)
            continue;
        const int out_dim = source.dim_at(k + 2, a + 1);
        if (out_dim == 0) {
            gys.blocks[key] = QMatrix(dim_tgt_block, 0);
            continue;
        }
        // Pair against H^{m, am} with m = 2d-k-2 = 2d'-k, am = d-a-1 = d'-a.
        const int m = 2 * d_dash - k;
        const int am = d_dash - a;
        const int dual_src = source.dim_at(m, am);
        const int dual_tgt = target.dim_at(m, am);

        auto p_src_it = source_pairing.blocks.find({m, am});
        if (p_src_it == source_pairing.blocks.end() ||
            p_src_it->second.rows() != static_cast<std::size_t>(dual_src) ||
            p_src_it->second.cols() != static_cast<std::size_t>(out_dim))
            throw std::domain_error("source pairing block missing or misshapen");
        if (dual_src != out_dim)
            throw std::domain_error("singular pairing: unequal dual dimensions");

        QMatrix r = block_or_zero(restriction.blocks, {m, am}, dual_src, dual_tgt);
        QMatrix p_tgt = block_or_zero(target_pairing.blocks, {m, am}, dual_tgt, dim_tgt_block);
        QMatrix composed = p_src_it->second.inverse() * r * p_tgt;
        gys.blocks[key] = composed.transposed();
    }
    return gys;
}

std::map<HodgeKey, QMatrix> cup_with_class(const StratumCohomology& stratum,
                                           const std::vector<Int>& klass) {
    if (!stratum.is_model_stratum)
        throw std::invalid_argument("cup_with_class needs a model stratum");
    const auto& factors = stratum.projective_factors;
    if (klass.size() != factors.size())
        throw std::invalid_argument("class coordinate count mismatch");
    std::vector<Rational> linear(klass.begin(), klass.end());

    std::map<HodgeKey, QMatrix> blocks;
    for (int m = 0; m + 1 <= stratum.dimension; ++m) {
        const auto src = monomials_of_degree(factors, m);
        const auto tgt = monomials_of_degree(factors, m + 1);
        if (src.empty() || tgt.empty())
            continue;
        const auto tgt_index = index_monomials(tgt);
        QMatrix block(src.size(), tgt.size());
        for (std::size_t i = 0; i < src.size(); ++i) {
            Poly p{{src[i], Rational(1)}};
            p = poly_times_linear(p, linear, factors);
            for (const auto& [e, c] : p)
                block.at(i, tgt_index.at(e)) = c;
        }
        blocks[{2 * m, m}] = std::move(block);
    }
    return blocks;
}

ValidationReport validate_hodge(const GsncModel& model, const HodgeAssignment& assignment) {
    ValidationReport report;
    const int ambient = model.components.empty() ? 0 : model.components[0].dim;

    for (const auto& s : model.strata) {
        const auto* coh = assignment.stratum(s.id);
        if (!coh) {
            report.add("missing-cohomology", "stratum '" + s.id + "' has no Hodge data");
            continue;
        }
        const int d = ambient - s.codim;
        if (coh->dimension != d)
            report.add("dimension", "stratum '" + s.id + "': declared dimension " +
                                        std::to_string(coh->dimension) + ", expected " +
                                        std::to_string(d));
        for (const auto& [key, value] : coh->dims) {
            const auto [n, a] = key;
            if (value < 0)
                report.add("negative-dim", "stratum '" + s.id + "' has a negative Hodge number");
            if (value > 0 && (a < 0 || a > n || n > 2 * d))
                report.add("hodge-range", "stratum '" + s.id + "': nonzero piece at (n=" +
                                              std::to_string(n) + ", a=" + std::to_string(a) +
                                              ") outside 0 <= a <= n <= 2 dim");
            if (value != coh->dim_at(n, n - a))
                report.add("hodge-symmetry", "stratum '" + s.id + "': dims(" + std::to_string(n) +
                                                 "," + std::to_string(a) + ") != dims(" +
                                                 std::to_string(n) + "," + std::to_string(n - a) + ")");
        }
        if (coh->dim_at(0, 0) != 1)
            report.add("h0-normalization", "stratum '" + s.id +
                                               "' must be connected: H^0 is not 1-dimensional of type (0,0)");
        for (const auto& [key, labels] : coh->basis_labels)
            if (static_cast<int>(labels.size()) != coh->dim_at(key.first, key.second))
                report.add("basis-labels", "stratum '" + s.id + "': basis label count differs from dim");
    }
    if (!report.ok())
        return report;

    // Every incidence carries a restriction of the right shape.
    for (const auto& inc : model.incidences) {
        const auto* restr = assignment.restriction(inc.upper, inc.lower);
        if (!restr) {
            report.add("missing-map", "no restriction map for incidence (" + inc.lower +
                                          " < " + inc.upper + ")");
            continue;
        }
        const auto* src = assignment.stratum(inc.upper);
        const auto* tgt = assignment.stratum(inc.lower);
        for (const auto& [key, dim_src] : src->dims) {
            if (dim_src == 0)
                continue;
            const int dim_tgt = tgt->dim_at(key.first, key.second);
            const auto* block = restr->block(key.first, key.second);
            if (!block) {
                if (dim_tgt != 0)
                    report.add("missing-block", "restriction " + inc.upper + " -> " + inc.lower +
                                                    " lacks the (" + std::to_string(key.first) + "," +
                                                    std::to_string(key.second) + ") block");
                continue;
            }
            if (block->rows() != static_cast<std::size_t>(dim_src) ||
                block->cols() != static_cast<std::size_t>(dim_tgt))
                report.add("block-shape", "restriction " + inc.upper + " -> " + inc.lower +
                                              ": block (" + std::to_string(key.first) + "," +
                                              std::to_string(key.second) + ") has wrong shape");
        }
    }

    for (const auto& gys : assignment.gysins) {
        const auto* src = assignment.stratum(gys.source);
        const auto* tgt = assignment.stratum(gys.target);
        if (!src || !tgt) {
            report.add("unknown-id", "gysin map references unknown strata");
            continue;
        }
        for (const auto& [key, block] : gys.blocks)
            if (block.rows() != static_cast<std::size_t>(src->dim_at(key.first, key.second)) ||
                block.cols() != static_cast<std::size_t>(tgt->dim_at(key.first + 2, key.second + 1)))
                report.add("block-shape", "gysin " + gys.source + " -> " + gys.target +
                                              ": block does not shift (n,a) by (2,1)");
    }

    for (const auto& [id, pairing] : assignment.pairings) {
        const auto* coh = assignment.stratum(id);
        if (!coh) {
            report.add("unknown-id", "pairing references unknown stratum '" + id + "'");
            continue;
        }
        for (const auto& [key, block] : pairing.blocks) {
            const auto [n, a] = key;
            const int rows = coh->dim_at(n, a);
            const int cols = coh->dim_at(2 * coh->dimension - n, coh->dimension - a);
            if (block.rows() != static_cast<std::size_t>(rows) ||
                block.cols() != static_cast<std::size_t>(cols))
                report.add("block-shape", "pairing on '" + id + "' has a misshapen block");
            else if (rows != cols || block.rank() != block.rows())
                report.add("degenerate-pairing", "pairing on '" + id + "' is degenerate at degree " +
                                                     std::to_string(n));
        }
    }
    if (!report.ok())
        return report;

    // Signed commutation around codim-2 squares; this is what d^2 = 0 needs.
    Poset poset(model);
    const auto& strata = model.strata;
    for (std::size_t z = 0; z < strata.size(); ++z) {
        struct Path {
            int middle;
            int grandparent;
            int sign;
        };
        std::map<int, std::vector<Path>> paths;
        for (const auto& c1 : poset.covers_up(static_cast<int>(z)))
            for (const auto& c2 : poset.covers_up(c1.stratum))
                paths[c2.stratum].push_back({c1.stratum, c2.stratum, c1.sign * c2.sign});
        for (const auto& [gp, list] : paths) {
            const auto* top = assignment.stratum(strata[gp].id);
            const auto* bottom = assignment.stratum(strata[z].id);
            for (const auto& [key, dim_src] : top->dims) {
                if (dim_src == 0)
                    continue;
                const int dim_tgt = bottom->dim_at(key.first, key.second);
                QMatrix sum(dim_src, dim_tgt);
                for (const auto& path : list) {
                    const auto* r1 = assignment.restriction(strata[gp].id, strata[path.middle].id);
                    const auto* r2 = assignment.restriction(strata[path.middle].id, strata[z].id);
                    const int dim_mid =
                        assignment.stratum(strata[path.middle].id)->dim_at(key.first, key.second);
                    QMatrix m1 = block_or_zero(r1->blocks, key, dim_src, dim_mid);
                    QMatrix m2 = block_or_zero(r2->blocks, key, dim_mid, dim_tgt);
                    sum = sum + (m1 * m2).scaled(path.sign);
                }
                if (!sum.is_zero())
                    report.add("square-commute",
                               "restrictions from '" + strata[gp].id + "' to '" + strata[z].id +
                                   "' do not anticommute with the incidence signs");
            }
        }
    }
    return report;
}

const GradedMap* find_restriction(const HodgeAssignment& assignment,
                                  const std::string& upper, const std::string& lower,
                                  std::string* why) {
    const auto* restr = assignment.restriction(upper, lower);
    if (!restr && why)
        *why = "no restriction map " + upper + " -> " + lower;
    return restr;
}

GradedMap resolve_gysin(const HodgeAssignment& assignment,
                        const std::string& lower, const std::string& upper) {
    if (const auto* stored = assignment.gysin(lower, upper))
        return *stored;
    const auto* restr = assignment.restriction(upper, lower);
    const auto* src = assignment.stratum(upper);
    const auto* tgt = assignment.stratum(lower);
    const auto* p_src = assignment.pairing(upper);
    const auto* p_tgt = assignment.pairing(lower);
    if (!restr || !src || !tgt || !p_src || !p_tgt)
        throw std::runtime_error("missing Gysin map for B-branch incidence (" + lower + " < " +
                                 upper + ") and no pairings to derive it");
    return gysin_from_pd(*restr, *src, *tgt, *p_src, *p_tgt);
}

}  // namespace gsnc
