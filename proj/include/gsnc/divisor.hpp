#pragma once

#include "gsnc/model.hpp"
#include "gsnc/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gsnc {

// Declared combinatorial data for one support component D_j of a Q-divisor.
// The model has no equations, so geometric facts arrive as flags and are
// checked for logical consistency only.
struct DivisorSupport {
    std::string id;
    std::vector<std::string> meets_strata;     // proper intersections
    std::vector<std::string> contains_strata;  // nonempty => not permissible
    // Lemma hypotheses for the covering plan; B-branches satisfy all three
    // by the GSNC pair axioms and need no declaration.
    std::optional<bool> subset_of_b;          // (1) D_j is contained in B
    std::optional<bool> distinct_supports;    // (2) no common components with other D_j
    std::optional<bool> smooth_traces;        // (3) D_j meets every stratum smoothly
};

struct QDivisor {
    std::string id;
    std::vector<std::pair<std::string, Rational>> coefficients;  // support id -> d_j
    std::vector<DivisorSupport> support;  // declarations for non-branch support ids

    const DivisorSupport* support_decl(const std::string& id) const;
    std::optional<Rational> coefficient(const std::string& id) const;
};

struct Permissibility {
    bool permissible = false;
    std::vector<std::string> witnesses;  // contained strata, per support component
};

// True iff no support component declares containment of a closed stratum.
// B-branches are permissible by construction. Unknown support or stratum
// ids throw std::invalid_argument.
Permissibility is_permissible(const GsncModel& model, const QDivisor& divisor);

// Coefficientwise ceiling.
QDivisor round_up(const QDivisor& divisor);

// Reduced (multiplicity-one) traces of the support components on a stratum.
using TraceData = std::map<std::string, std::vector<std::pair<std::string, int>>>;

// Checks ceil(D)|_Y = ceil(D|_Y) for the supplied trace data. Non-reduced
// traces are outside the GSNC hypotheses and throw std::invalid_argument.
bool restrict_then_roundup_check(const QDivisor& divisor, const std::string& stratum,
                                 const TraceData& traces);

struct CoveringPlan {
    std::vector<std::pair<std::string, Int>> multiplicities;  // m_j per support
    std::vector<std::pair<std::string, Int>> pullback;        // m_j * d_j, integral
    Int total_degree = 1;                                     // product of the m_j
    Int lcm_degree = 1;  // single-cover alternative, reported, not chosen
};

// Kummer covering plan clearing the denominators of D: m_j is the lowest-
// terms denominator of d_j, minimal in each coordinate. Undeclared or
// violated lemma hypotheses throw std::invalid_argument listing conditions
// (1)-(3) per support component.
CoveringPlan covering_plan(const GsncModel& model, const QDivisor& divisor);

}  // namespace gsnc
