#pragma once

#include "gsnc/hodge.hpp"
#include "gsnc/model.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace gsnc {

// A finite complex C_0 -> C_1 -> ... over Q, maps row-per-source.
struct ChainComplexQ {
    std::vector<int> dims;
    std::vector<QMatrix> maps;  // maps[i]: C_i -> C_{i+1}, size dims.size()-1 when nonempty

    bool is_complex() const;                // all consecutive composites vanish
    std::vector<int> homology_dims() const; // ker/im dimension at each index
};

// Mayer-Vietoris E1 complex of a GSNC variety (B = 0): slot (p, k, a) is the
// (a, k-a) part of H^k(X^[p]), ordered by stratum input order; d1 is the
// signed sum of restrictions, with a global (-1)^p column factor.
struct BigradedComplex {
    int ambient_dim = 0;
    int max_p = 0;
    std::vector<std::vector<int>> columns;            // p -> stratum indices in X^[p]
    std::map<std::tuple<int, int, int>, int> slots;   // (p, k, a) -> dim
    std::map<std::tuple<int, int, int>, QMatrix> d1;  // (p, k, a) -> map into (p+1, k, a)

    int slot_dim(int p, int k, int a) const;
    const QMatrix* differential(int p, int k, int a) const;
};

// Requires a validated model with B empty and a validated assignment; throws
// MathError when the signed restrictions fail d1^2 = 0.
BigradedComplex build_mv_complex(const GsncModel& model, const HodgeAssignment& assignment);

struct BettiTable {
    std::vector<int> betti;                     // degrees 0 .. 2 dim X
    std::map<std::pair<int, int>, int> weights; // (n, w) -> dim Gr^W_w H^n

    long long euler_characteristic() const;
};

// E2 = E-infinity dimensions per Hodge block; the weight of the E2^{p,q}
// contribution to H^{p+q} is q.
BettiTable cohomology_of_X(const BigradedComplex& complex);

// h^q(X, O_X) from the Hodge-index a = 0 subcomplex, degrees 0 .. 2 dim X.
std::vector<int> structure_sheaf_cohomology(const GsncModel& model,
                                            const HodgeAssignment& assignment);

}  // namespace gsnc
