#include "gsnc/divisor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gsnc {

const DivisorSupport* QDivisor::support_decl(const std::string& wanted) const {
    for (const auto& s : support)
        if (s.id == wanted)
            return &s;
    return nullptr;
}

std::optional<Rational> QDivisor::coefficient(const std::string& wanted) const {
    for (const auto& [id, value] : coefficients)
        if (id == wanted)
            return value;
    return std::nullopt;
}

namespace {

bool is_branch(const GsncModel& model, const std::string& id) {
    return std::find(model.b_branch_ids.begin(), model.b_branch_ids.end(), id) !=
           model.b_branch_ids.end();
}

void check_stratum_refs(const GsncModel& model, const std::vector<std::string>& ids,
                        const std::string& context) {
    std::set<std::string> known;
    for (const auto& s : model.strata)
        known.insert(s.id);
    for (const auto& id : ids)
        if (!known.count(id))
            throw std::invalid_argument(context + " references unknown stratum '" + id + "'");
}

}  // namespace

Permissibility is_permissible(const GsncModel& model, const QDivisor& divisor) {
    Permissibility result;
    result.permissible = true;
    for (const auto& [id, value] : divisor.coefficients) {
        (void)value;
        if (is_branch(model, id))
            continue;  // permissible Cartier divisor by the pair axioms
        const auto* decl = divisor.support_decl(id);
        if (!decl)
            throw std::invalid_argument("unknown divisor id '" + id + "'");
        check_stratum_refs(model, decl->meets_strata, "support '" + id + "'");
        check_stratum_refs(model, decl->contains_strata, "support '" + id + "'");
        for (const auto& stratum : decl->contains_strata) {
            result.permissible = false;
            result.witnesses.push_back(id + " contains " + stratum);
        }
    }
    return result;
}

QDivisor round_up(const QDivisor& divisor) {
    QDivisor out = divisor;
    for (auto& [id, value] : out.coefficients)
        value = Rational(rational_ceil(value));
    return out;
}

bool restrict_then_roundup_check(const QDivisor& divisor, const std::string& stratum,
                                 const TraceData& traces) {
    // Coefficient maps on the trace components of Y.
    std::map<std::string, Rational> restricted;        // (D|_Y)
    std::map<std::string, Int> rounded_restricted;     // (ceil D)|_Y
    for (const auto& [id, d] : divisor.coefficients) {
        auto it = traces.find(id);
        if (it == traces.end())
            throw std::invalid_argument("no trace data for support '" + id + "' on stratum '" +
                                        stratum + "'");
        for (const auto& [component, multiplicity] : it->second) {
            if (multiplicity != 1)
                throw std::invalid_argument(
                    "trace of '" + id + "' on '" + stratum + "' has multiplicity " +
                    std::to_string(multiplicity) +
                    "; the pair hypotheses require reduced traces");
            restricted[component] += d;
            rounded_restricted[component] += rational_ceil(d);
        }
    }
    for (const auto& [component, value] : restricted)
        if (rational_ceil(value) != rounded_restricted[component])
            return false;
    return true;
}

CoveringPlan covering_plan(const GsncModel& model, const QDivisor& divisor) {
    std::vector<std::string> problems;
    for (const auto& [id, value] : divisor.coefficients) {
        (void)value;
        if (is_branch(model, id))
            continue;
        const auto* decl = divisor.support_decl(id);
        auto require = [&](const std::optional<bool>& flag, const char* what) {
            if (!decl || !flag.has_value())
                problems.push_back("condition " + std::string(what) + " undeclared for '" + id + "'");
            else if (!*flag)
                problems.push_back("condition " + std::string(what) + " fails for '" + id + "'");
        };
        require(decl ? decl->subset_of_b : std::nullopt, "(1) D_j in B");
        require(decl ? decl->distinct_supports : std::nullopt, "(2) distinct supports");
        require(decl ? decl->smooth_traces : std::nullopt, "(3) smooth traces");
    }
    if (!problems.empty()) {
        std::ostringstream out;
        out << "covering lemma hypotheses not established:";
        for (const auto& p : problems)
            out << " " << p << ";";
        throw std::invalid_argument(out.str());
    }

    CoveringPlan plan;
    for (const auto& [id, d] : divisor.coefficients) {
        const Int m = denominator(d);  // lowest terms, hence minimal
        plan.multiplicities.emplace_back(id, m);
        plan.pullback.emplace_back(id, numerator(d));
        plan.total_degree *= m;
        plan.lcm_degree = lcm(plan.lcm_degree, m);
    }
    return plan;
}

}  // namespace gsnc
