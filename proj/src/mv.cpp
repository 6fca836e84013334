#include "gsnc/mv.hpp"

#include "gsnc/errors.hpp"

#include <algorithm>
#include <set>

namespace gsnc {

bool ChainComplexQ::is_complex() const {
    for (std::size_t i = 0; i + 1 < maps.size(); ++i)
        if (!(maps[i] * maps[i + 1]).is_zero())
            return false;
    return true;
}

std::vector<int> ChainComplexQ::homology_dims() const {
    std::vector<std::size_t> ranks(maps.size());
    for (std::size_t i = 0; i < maps.size(); ++i)
        ranks[i] = maps[i].rank();
    std::vector<int> h(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        int value = dims[i];
        if (i < ranks.size())
            value -= static_cast<int>(ranks[i]);
        if (i > 0)
            value -= static_cast<int>(ranks[i - 1]);
        h[i] = value;
    }
    return h;
}

int BigradedComplex::slot_dim(int p, int k, int a) const {
    auto it = slots.find({p, k, a});
    return it == slots.end() ? 0 : it->second;
}

const QMatrix* BigradedComplex::differential(int p, int k, int a) const {
    auto it = d1.find({p, k, a});
    return it == d1.end() ? nullptr : &it->second;
}

BigradedComplex build_mv_complex(const GsncModel& model, const HodgeAssignment& assignment) {
    for (const auto& s : model.strata)
        if (!s.b_branches.empty())
            throw std::invalid_argument("build_mv_complex needs B = 0; stratum '" + s.id +
                                        "' carries B-cuts");

    BigradedComplex complex;
    complex.ambient_dim = model.components.empty() ? 0 : model.components[0].dim;
    Poset poset(model);

    for (std::size_t i = 0; i < model.strata.size(); ++i) {
        const int p = model.strata[i].codim;
        complex.max_p = std::max(complex.max_p, p);
        if (static_cast<int>(complex.columns.size()) <= p)
            complex.columns.resize(p + 1);
        complex.columns[p].push_back(static_cast<int>(i));
    }

    // Offsets of each stratum inside its column, per (k, a).
    std::map<std::tuple<int, int, int>, std::map<int, int>> offsets;
    std::set<std::pair<int, int>> keys;
    for (int p = 0; p <= complex.max_p; ++p)
        for (int s : complex.columns[p]) {
            const auto* coh = assignment.stratum(model.strata[s].id);
            if (!coh)
                throw std::invalid_argument("stratum '" + model.strata[s].id + "' has no Hodge data");
            for (const auto& [key, d] : coh->dims) {
                if (d == 0)
                    continue;
                auto& slot = complex.slots[{p, key.first, key.second}];
                offsets[{p, key.first, key.second}][s] = slot;
                slot += d;
                keys.insert(key);
            }
        }

    for (const auto& [k, a] : keys) {
        for (int p = 0; p < complex.max_p; ++p) {
            const int rows = complex.slot_dim(p, k, a);
            const int cols = complex.slot_dim(p + 1, k, a);
            if (rows == 0)
                continue;
            QMatrix d(rows, cols);
            bool any = false;
            for (int upper : complex.columns[p]) {
                const auto& upper_id = model.strata[upper].id;
                const int dim_src = assignment.stratum(upper_id)->dim_at(k, a);
                if (dim_src == 0)
                    continue;
                const int row0 = offsets[{p, k, a}][upper];
                for (const auto& cov : poset.covers_down(upper)) {
                    const auto& lower_id = model.strata[cov.stratum].id;
                    const int dim_tgt = assignment.stratum(lower_id)->dim_at(k, a);
                    if (dim_tgt == 0)
                        continue;
                    const auto* restr = assignment.restriction(upper_id, lower_id);
                    if (!restr)
                        throw std::invalid_argument("no restriction map " + upper_id + " -> " +
                                                    lower_id);
                    const auto* block = restr->block(k, a);
                    if (!block)
                        continue;
                    const int col0 = offsets[{p + 1, k, a}][cov.stratum];
                    const int coeff = (p % 2 == 0 ? 1 : -1) * cov.sign;
                    for (std::size_t i = 0; i < block->rows(); ++i)
                        for (std::size_t j = 0; j < block->cols(); ++j)
                            d.at(row0 + i, col0 + j) += Rational(coeff) * block->at(i, j);
                    any = true;
                }
            }
            if (any || cols > 0)
                complex.d1[{p, k, a}] = std::move(d);
        }
    }

    for (const auto& [k, a] : keys)
        for (int p = 0; p + 1 < complex.max_p; ++p) {
            const auto* d0 = complex.differential(p, k, a);
            const auto* d1 = complex.differential(p + 1, k, a);
            if (d0 && d1 && !(*d0 * *d1).is_zero())
                throw MathError("Mayer-Vietoris differential fails d^2 = 0 at column p = " +
                                std::to_string(p) + ", degree " + std::to_string(k));
        }
    return complex;
}

long long BettiTable::euler_characteristic() const {
    long long chi = 0;
    for (std::size_t n = 0; n < betti.size(); ++n)
        chi += (n % 2 == 0 ? betti[n] : -betti[n]);
    return chi;
}

namespace {

ChainComplexQ column_complex(const BigradedComplex& complex, int k, int a) {
    ChainComplexQ chain;
    for (int p = 0; p <= complex.max_p; ++p)
        chain.dims.push_back(complex.slot_dim(p, k, a));
    for (int p = 0; p < complex.max_p; ++p) {
        const auto* d = complex.differential(p, k, a);
        if (d)
            chain.maps.push_back(*d);
        else
            chain.maps.push_back(QMatrix(chain.dims[p], chain.dims[p + 1]));
    }
    return chain;
}

}  // namespace

BettiTable cohomology_of_X(const BigradedComplex& complex) {
    BettiTable table;
    table.betti.assign(2 * complex.ambient_dim + 1, 0);

    std::set<std::pair<int, int>> keys;
    for (const auto& [key, dim] : complex.slots)
        if (dim > 0)
            keys.insert({std::get<1>(key), std::get<2>(key)});

    for (const auto& [k, a] : keys) {
        const auto h = column_complex(complex, k, a).homology_dims();
        for (int p = 0; p <= complex.max_p; ++p) {
            if (h[p] == 0)
                continue;
            const int n = p + k;
            if (n >= 0 && n < static_cast<int>(table.betti.size()))
                table.betti[n] += h[p];
            table.weights[{n, k}] += h[p];
        }
    }
    return table;
}

std::vector<int> structure_sheaf_cohomology(const GsncModel& model,
                                            const HodgeAssignment& assignment) {
    const auto complex = build_mv_complex(model, assignment);
    std::vector<int> h(2 * complex.ambient_dim + 1, 0);

    std::set<int> degrees;
    for (const auto& [key, dim] : complex.slots)
        if (std::get<2>(key) == 0 && dim > 0)
            degrees.insert(std::get<1>(key));

    for (int k : degrees) {
        const auto hom = column_complex(complex, k, 0).homology_dims();
        for (int p = 0; p <= complex.max_p; ++p) {
            const int q = p + k;
            if (hom[p] != 0 && q >= 0 && q < static_cast<int>(h.size()))
                h[q] += hom[p];
        }
    }
    return h;
}

}  // namespace gsnc
