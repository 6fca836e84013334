#pragma once

#include "gsnc/hodge.hpp"
#include "gsnc/model.hpp"
#include "gsnc/weight.hpp"

#include <map>
#include <string>
#include <utility>

namespace gsnc {

// Hodge-Deligne E-polynomial, coefficients e(a, b) on u^a v^b.
struct EPolynomial {
    std::map<std::pair<int, int>, long long> coefficients;

    void add(int a, int b, long long c);
    EPolynomial operator+(const EPolynomial& rhs) const;
    EPolynomial operator-(const EPolynomial& rhs) const;
    EPolynomial scaled(long long c) const;
    EPolynomial shifted(int uv_power) const;  // multiply by (uv)^k
    bool operator==(const EPolynomial& rhs) const { return coefficients == rhs.coefficients; }
    bool operator!=(const EPolynomial& rhs) const { return !(*this == rhs); }

    long long at(int a, int b) const;
    long long evaluate_at_one() const;  // u = v = 1, the Euler characteristic
    std::string to_string() const;      // terms "c*u^a*v^b" in sorted (a,b) order
};

// Alternating sum of the Hodge numbers of one smooth proper stratum.
EPolynomial e_of_stratum(const StratumCohomology& coh);

// E-polynomial of X \ B by inclusion-exclusion over the strata poset:
// open-stratum Moebius recursion in the component directions, with the
// boundary directions entering through (-uv)-weighted B-cut depth. Agrees
// with the weight-engine route on every valid model.
EPolynomial e_polynomial_strata(const GsncModel& model, const HodgeAssignment& assignment);

// coefficients(a,b) = sum_n (-1)^n entries(n, a, b).
EPolynomial e_polynomial_from_mhs(const MixedHodgeTable& table);

}  // namespace gsnc
