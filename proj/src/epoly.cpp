#include "gsnc/epoly.hpp"

#include <algorithm>
#include <sstream>

namespace gsnc {

void EPolynomial::add(int a, int b, long long c) {
    if (c == 0)
        return;
    auto it = coefficients.find({a, b});
    if (it == coefficients.end()) {
        coefficients.emplace(std::pair{a, b}, c);
        return;
    }
    it->second += c;
    if (it->second == 0)
        coefficients.erase(it);
}

EPolynomial EPolynomial::operator+(const EPolynomial& rhs) const {
    EPolynomial out = *this;
    for (const auto& [key, c] : rhs.coefficients)
        out.add(key.first, key.second, c);
    return out;
}

EPolynomial EPolynomial::operator-(const EPolynomial& rhs) const {
    return *this + rhs.scaled(-1);
}

EPolynomial EPolynomial::scaled(long long c) const {
    EPolynomial out;
    for (const auto& [key, value] : coefficients)
        out.add(key.first, key.second, value * c);
    return out;
}

EPolynomial EPolynomial::shifted(int uv_power) const {
    EPolynomial out;
    for (const auto& [key, value] : coefficients)
        out.add(key.first + uv_power, key.second + uv_power, value);
    return out;
}

long long EPolynomial::at(int a, int b) const {
    auto it = coefficients.find({a, b});
    return it == coefficients.end() ? 0 : it->second;
}

long long EPolynomial::evaluate_at_one() const {
    long long total = 0;
    for (const auto& [key, c] : coefficients)
        total += c;
    return total;
}

std::string EPolynomial::to_string() const {
    if (coefficients.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : coefficients) {
        if (!first)
            out << " + ";
        out << c << "*u^" << key.first << "*v^" << key.second;
        first = false;
    }
    return out.str();
}

EPolynomial e_of_stratum(const StratumCohomology& coh) {
    EPolynomial e;
    for (const auto& [key, dim] : coh.dims) {
        const auto [n, a] = key;
        e.add(a, n - a, n % 2 == 0 ? dim : -dim);
    }
    return e;
}

EPolynomial e_polynomial_strata(const GsncModel& model, const HodgeAssignment& assignment) {
    Poset poset(model);
    const int count = static_cast<int>(model.strata.size());

    // For each X-proper stratum Z, the log-weighted sum over its B-cut
    // strata: a boundary cut of depth k contributes (-uv)^k E(Y).
    std::vector<EPolynomial> relative(count);
    std::vector<int> x_proper;
    for (int i = 0; i < count; ++i) {
        auto anchor = poset.min_x_ancestor(i);
        if (!anchor)
            throw std::invalid_argument("stratum '" + model.strata[i].id +
                                        "' has no unique minimal X-proper ancestor");
        const auto* coh = assignment.stratum(model.strata[i].id);
        if (!coh)
            throw std::invalid_argument("stratum '" + model.strata[i].id + "' has no Hodge data");
        const int cuts = model.strata[i].codim - model.strata[*anchor].codim;
        const EPolynomial term = e_of_stratum(*coh).shifted(cuts).scaled(cuts % 2 == 0 ? 1 : -1);
        relative[*anchor] = relative[*anchor] + term;
        if (poset.is_x_proper(i))
            x_proper.push_back(i);
    }

    // Moebius recursion on the subposet of X-proper strata: a closed stratum
    // is the disjoint union of the open strata it contains.
    std::sort(x_proper.begin(), x_proper.end(), [&](int a, int b) {
        if (model.strata[a].codim != model.strata[b].codim)
            return model.strata[a].codim > model.strata[b].codim;
        return a < b;
    });
    std::vector<EPolynomial> open_part(count);
    EPolynomial total;
    for (int z : x_proper) {
        EPolynomial value = relative[z];
        for (int below : x_proper) {
            if (below == z || !poset.contains(below, z))
                continue;
            value = value - open_part[below];
        }
        open_part[z] = value;
        total = total + value;
    }
    return total;
}

EPolynomial e_polynomial_from_mhs(const MixedHodgeTable& table) {
    EPolynomial e;
    for (const auto& [key, dim] : table.entries) {
        const auto [n, a, b] = key;
        e.add(a, b, n % 2 == 0 ? dim : -dim);
    }
    return e;
}

}  // namespace gsnc
