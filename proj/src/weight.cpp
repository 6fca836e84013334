#include "gsnc/weight.hpp"

#include "gsnc/errors.hpp"
#include "gsnc/mv.hpp"

#include <algorithm>
#include <set>

namespace gsnc {

namespace {

// Block of an arrow's map at source key (k, a), together with the target key.
QMatrix arrow_block(const E1Arrow& arrow, const StratumCohomology& src,
                    const StratumCohomology& tgt, int k, int a, HodgeKey* target_key) {
    const HodgeKey out = arrow.is_gysin ? HodgeKey{k + 2, a + 1} : HodgeKey{k, a};
    if (target_key)
        *target_key = out;
    const int rows = src.dim_at(k, a);
    const int cols = tgt.dim_at(out.first, out.second);
    const auto* block = arrow.map.block(k, a);
    if (block && block->rows() == static_cast<std::size_t>(rows) &&
        block->cols() == static_cast<std::size_t>(cols))
        return block->scaled(arrow.coeff);
    return QMatrix(rows, cols);
}

}  // namespace

WeightE1 assemble_E1(const GsncModel& model, const HodgeAssignment& assignment) {
    WeightE1 page;
    page.model = &model;
    Poset poset(model);

    for (std::size_t i = 0; i < model.strata.size(); ++i) {
        const auto& s = model.strata[i];
        if (!assignment.stratum(s.id))
            throw std::invalid_argument("stratum '" + s.id + "' has no Hodge data");
        auto anchor = poset.min_x_ancestor(static_cast<int>(i));
        if (!anchor)
            throw std::invalid_argument("stratum '" + s.id +
                                        "' has no unique minimal X-proper ancestor");
        E1Summand summand;
        summand.stratum = static_cast<int>(i);
        summand.p = model.strata[*anchor].codim;
        summand.q = s.codim - 2 * summand.p;
        summand.twist = summand.p + summand.q;
        page.by_q[summand.q].push_back(static_cast<int>(page.summands.size()));
        page.summands.push_back(summand);
    }
    return page;
}

void assemble_d1(const GsncModel& model, const HodgeAssignment& assignment, WeightE1& page) {
    Poset poset(model);
    std::vector<int> summand_of(model.strata.size());
    for (std::size_t i = 0; i < page.summands.size(); ++i)
        summand_of[page.summands[i].stratum] = static_cast<int>(i);
    auto anchor_codim = [&](int stratum) {
        return model.strata[*poset.min_x_ancestor(stratum)].codim;
    };

    page.arrows.clear();
    page.arrows_from.assign(page.summands.size(), {});
    for (std::size_t si = 0; si < page.summands.size(); ++si) {
        const auto& s = page.summands[si];
        const auto& id = model.strata[s.stratum].id;

        // Restriction blocks: one more component cut, anchor codim p+1.
        for (const auto& cov : poset.covers_down(s.stratum)) {
            if (anchor_codim(cov.stratum) != s.p + 1)
                continue;
            const auto& lower_id = model.strata[cov.stratum].id;
            const auto* restr = assignment.restriction(id, lower_id);
            if (!restr)
                throw MathError("no restriction map " + id + " -> " + lower_id);
            E1Arrow arrow;
            arrow.from = static_cast<int>(si);
            arrow.to = summand_of[cov.stratum];
            arrow.coeff = (s.p % 2 == 0 ? 1 : -1) * cov.sign;
            arrow.is_gysin = false;
            arrow.map = *restr;
            page.arrows_from[si].push_back(static_cast<int>(page.arrows.size()));
            page.arrows.push_back(std::move(arrow));
        }

        // Gysin blocks: one fewer B-branch cut, same anchor.
        for (const auto& cov : poset.covers_up(s.stratum)) {
            if (anchor_codim(cov.stratum) != s.p)
                continue;
            const auto& upper_id = model.strata[cov.stratum].id;
            E1Arrow arrow;
            arrow.from = static_cast<int>(si);
            arrow.to = summand_of[cov.stratum];
            arrow.coeff = cov.sign;
            arrow.is_gysin = true;
            try {
                arrow.map = resolve_gysin(assignment, id, upper_id);
            } catch (const std::runtime_error& e) {
                throw MathError(e.what());
            }
            page.arrows_from[si].push_back(static_cast<int>(page.arrows.size()));
            page.arrows.push_back(std::move(arrow));
        }
    }

    // d1 o d1 = 0, block by block; this arbitrates the sign conventions.
    for (std::size_t si = 0; si < page.summands.size(); ++si) {
        const auto& src = *assignment.stratum(model.strata[page.summands[si].stratum].id);
        std::map<std::pair<int, HodgeKey>, QMatrix> sums;  // (end summand, source key)
        for (int a1 : page.arrows_from[si]) {
            const auto& first = page.arrows[a1];
            const auto& mid = *assignment.stratum(model.strata[page.summands[first.to].stratum].id);
            for (int a2 : page.arrows_from[first.to]) {
                const auto& second = page.arrows[a2];
                const auto& end =
                    *assignment.stratum(model.strata[page.summands[second.to].stratum].id);
                for (const auto& [key, dim] : src.dims) {
                    if (dim == 0)
                        continue;
                    HodgeKey mid_key;
                    QMatrix m1 = arrow_block(first, src, mid, key.first, key.second, &mid_key);
                    QMatrix m2 = arrow_block(second, mid, end, mid_key.first, mid_key.second, nullptr);
                    QMatrix product = m1 * m2;
                    auto slot = sums.find({second.to, key});
                    if (slot == sums.end())
                        sums.emplace(std::pair<int, HodgeKey>{second.to, key}, std::move(product));
                    else
                        slot->second = slot->second + product;
                }
            }
        }
        for (const auto& [slot_key, sum] : sums)
            if (!sum.is_zero())
                throw MathError("d1 o d1 != 0 on the square from stratum '" +
                                model.strata[page.summands[si].stratum].id + "' to '" +
                                model.strata[page.summands[slot_key.first].stratum].id + "'");
    }
}

std::vector<SlotEntry> slot_entries(const WeightE1& page, const HodgeAssignment& assignment,
                                    int q, int n) {
    std::vector<SlotEntry> entries;
    auto it = page.by_q.find(q);
    if (it == page.by_q.end())
        return entries;
    for (int si : it->second) {
        const auto& s = page.summands[si];
        const int degree = n - 2 * s.p - s.q;
        const auto& coh = *assignment.stratum(page.model->strata[s.stratum].id);
        const int dim = coh.betti(degree);
        if (dim > 0)
            entries.push_back({si, degree, dim});
    }
    return entries;
}

QMatrix d1_matrix(const WeightE1& page, const HodgeAssignment& assignment, int q, int n) {
    // Layout: summands of Gr_q in by_q order, blocks by ascending Hodge index.
    struct Piece {
        int summand;
        HodgeKey key;
        int offset;
        int dim;
    };
    auto layout = [&](int q_slot, int n_slot) {
        std::vector<Piece> pieces;
        int total = 0;
        auto it = page.by_q.find(q_slot);
        if (it == page.by_q.end())
            return std::pair(pieces, total);
        for (int si : it->second) {
            const auto& s = page.summands[si];
            const int k = n_slot - 2 * s.p - s.q;
            const auto& coh = *assignment.stratum(page.model->strata[s.stratum].id);
            for (const auto& [key, dim] : coh.dims)
                if (dim > 0 && key.first == k) {
                    pieces.push_back({si, key, total, dim});
                    total += dim;
                }
        }
        return std::pair(pieces, total);
    };

    const auto [src_pieces, src_total] = layout(q, n);
    const auto [tgt_pieces, tgt_total] = layout(q - 1, n + 1);
    QMatrix d(src_total, tgt_total);
    for (const auto& src_piece : src_pieces) {
        for (int ai : page.arrows_from[src_piece.summand]) {
            const auto& arrow = page.arrows[ai];
            const auto& src = *assignment.stratum(
                page.model->strata[page.summands[arrow.from].stratum].id);
            const auto& tgt =
                *assignment.stratum(page.model->strata[page.summands[arrow.to].stratum].id);
            HodgeKey out;
            QMatrix block =
                arrow_block(arrow, src, tgt, src_piece.key.first, src_piece.key.second, &out);
            for (const auto& tgt_piece : tgt_pieces) {
                if (tgt_piece.summand != arrow.to || tgt_piece.key != out)
                    continue;
                for (std::size_t i = 0; i < block.rows(); ++i)
                    for (std::size_t j = 0; j < block.cols(); ++j)
                        d.at(src_piece.offset + i, tgt_piece.offset + j) += block.at(i, j);
            }
        }
    }
    return d;
}

int MixedHodgeTable::entry(int n, int a, int b) const {
    auto it = entries.find({n, a, b});
    return it == entries.end() ? 0 : it->second;
}

namespace {

// Homology dims of the (A, B)-twisted-bidegree block complex, indexed by n.
// With B < 0 the Hodge-index slice complex (all b) for A = r is produced.
std::map<int, int> block_homology(const WeightE1& page, const HodgeAssignment& assignment,
                                  int A, int B) {
    struct Piece {
        int summand;
        int k;
        int a;
        int offset;
        int dim;
    };
    std::map<int, std::vector<Piece>> pieces_by_n;
    std::map<int, int> total_by_n;
    for (std::size_t si = 0; si < page.summands.size(); ++si) {
        const auto& s = page.summands[si];
        const int a = A - s.twist;
        if (a < 0)
            continue;
        const auto& coh = *assignment.stratum(page.model->strata[s.stratum].id);
        if (B >= 0) {
            const int b = B - s.twist;
            if (b < 0)
                continue;
            const int k = a + b;
            const int dim = coh.dim_at(k, a);
            if (dim == 0)
                continue;
            const int n = k + 2 * s.p + s.q;
            auto& total = total_by_n[n];
            pieces_by_n[n].push_back({static_cast<int>(si), k, a, total, dim});
            total += dim;
        } else {
            // F-slice: fixed untwisted a, every cohomological degree.
            for (const auto& [key, dim] : coh.dims) {
                if (dim == 0 || key.second != a)
                    continue;
                const int n = key.first + 2 * s.p + s.q;
                auto& total = total_by_n[n];
                pieces_by_n[n].push_back({static_cast<int>(si), key.first, a, total, dim});
                total += dim;
            }
        }
    }
    if (total_by_n.empty())
        return {};

    const int n_min = total_by_n.begin()->first;
    const int n_max = total_by_n.rbegin()->first;
    ChainComplexQ chain;
    for (int n = n_min; n <= n_max; ++n)
        chain.dims.push_back(total_by_n.count(n) ? total_by_n[n] : 0);
    for (int n = n_min; n < n_max; ++n) {
        QMatrix d(chain.dims[n - n_min], chain.dims[n + 1 - n_min]);
        for (const auto& src_piece : pieces_by_n[n]) {
            for (int ai : page.arrows_from[src_piece.summand]) {
                const auto& arrow = page.arrows[ai];
                const auto& src = *assignment.stratum(
                    page.model->strata[page.summands[arrow.from].stratum].id);
                const auto& tgt = *assignment.stratum(
                    page.model->strata[page.summands[arrow.to].stratum].id);
                HodgeKey out;
                QMatrix block = arrow_block(arrow, src, tgt, src_piece.k, src_piece.a, &out);
                for (const auto& tgt_piece : pieces_by_n[n + 1]) {
                    if (tgt_piece.summand != arrow.to || tgt_piece.k != out.first ||
                        tgt_piece.a != out.second)
                        continue;
                    for (std::size_t i = 0; i < block.rows(); ++i)
                        for (std::size_t j = 0; j < block.cols(); ++j)
                            d.at(src_piece.offset + i, tgt_piece.offset + j) += block.at(i, j);
                }
            }
        }
        chain.maps.push_back(std::move(d));
    }

    const auto h = chain.homology_dims();
    std::map<int, int> out;
    for (int n = n_min; n <= n_max; ++n)
        if (h[n - n_min] != 0)
            out[n] = h[n - n_min];
    return out;
}

}  // namespace

MixedHodgeTable mixed_hodge_numbers(const GsncModel& model, const HodgeAssignment& assignment) {
    WeightE1 page = assemble_E1(model, assignment);
    assemble_d1(model, assignment, page);

    const int ambient = model.components.empty() ? 0 : model.components[0].dim;
    MixedHodgeTable table;
    table.betti.assign(2 * ambient + 1, 0);

    for (int A = 0; A <= 2 * ambient; ++A)
        for (int B = 0; B <= 2 * ambient; ++B) {
            const auto h = block_homology(page, assignment, A, B);
            for (const auto& [n, dim] : h) {
                table.entries[{n, A, B}] += dim;
                table.weights[{n, A + B}] += dim;
                if (n >= 0 && n < static_cast<int>(table.betti.size()))
                    table.betti[n] += dim;
            }
        }
    return table;
}

HodgeFiltration hodge_filtration_dims(const GsncModel& model,
                                      const HodgeAssignment& assignment) {
    HodgeFiltration result;
    const auto table = mixed_hodge_numbers(model, assignment);
    for (const auto& [key, dim] : table.entries) {
        const auto [n, a, b] = key;
        result.via_table[{n, a}] += dim;
    }

    WeightE1 page = assemble_E1(model, assignment);
    assemble_d1(model, assignment, page);
    const int ambient = model.components.empty() ? 0 : model.components[0].dim;
    for (int r = 0; r <= 2 * ambient; ++r) {
        const auto h = block_homology(page, assignment, r, -1);
        for (const auto& [n, dim] : h)
            result.via_f_slices[{n, r}] += dim;
    }
    result.consistent = result.via_table == result.via_f_slices;
    return result;
}

}  // namespace gsnc
