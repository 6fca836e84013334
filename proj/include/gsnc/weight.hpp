#pragma once

#include "gsnc/hodge.hpp"
#include "gsnc/model.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace gsnc {

// One Lemma-Gr1 summand of the weight E1 page: the stratum Y contributes
// H^{n-2p-q}(Y) to Gr_q at degree n, Tate-twisted by p+q, where p is the
// codimension of the minimal X-proper stratum containing Y and q = codim - 2p.
struct E1Summand {
    int stratum = 0;  // index into model.strata
    int p = 0;
    int q = 0;
    int twist = 0;  // p + q
};

// d1 arrow between summands: Gysin blocks carry the B-branch incidence sign,
// restriction blocks the incidence sign times (-1)^p.
struct E1Arrow {
    int from = 0;  // summand indices
    int to = 0;
    int coeff = 1;
    bool is_gysin = false;
    GradedMap map;  // resolved restriction or Gysin map
};

struct WeightE1 {
    const GsncModel* model = nullptr;
    std::vector<E1Summand> summands;         // one per stratum, input order
    std::map<int, std::vector<int>> by_q;    // q -> summand indices
    std::vector<E1Arrow> arrows;             // filled by assemble_d1
    std::vector<std::vector<int>> arrows_from;  // summand -> arrow indices
};

// Lemma-Gr1 slots. Throws std::invalid_argument when a stratum lacks a
// unique minimal X-proper ancestor (validate_model reports this first).
WeightE1 assemble_E1(const GsncModel& model, const HodgeAssignment& assignment);

// Builds the d1 arrows and verifies d1 o d1 = 0 blockwise; throws MathError
// naming the offending square otherwise. Missing Gysin data for a B-branch
// incidence raises MathError as well.
void assemble_d1(const GsncModel& model, const HodgeAssignment& assignment, WeightE1& page);

// Entries of the slot Gr_q at degree n: which summands contribute which
// cohomological degree of their stratum.
struct SlotEntry {
    int summand;
    int degree;  // n - 2p - q on the stratum
    int dim;     // total dimension over all Hodge indices
};
std::vector<SlotEntry> slot_entries(const WeightE1& page, const HodgeAssignment& assignment,
                                    int q, int n);

// Full matrix of d1 from slot (q, n) to slot (q-1, n+1); bases ordered by
// summand, then Hodge index, then basis order. For tests and inspection.
QMatrix d1_matrix(const WeightE1& page, const HodgeAssignment& assignment, int q, int n);

struct MixedHodgeTable {
    std::map<std::tuple<int, int, int>, int> entries;  // (n, a, b) -> h^{a,b}(H^n)
    std::map<std::pair<int, int>, int> weights;        // (n, w) -> dim Gr^W_w H^n
    std::vector<int> betti;                            // degrees 0 .. 2 dim X

    int entry(int n, int a, int b) const;
};

// E2 page per twisted Hodge bidegree; E2 = E-infinity under the B=0/pair
// degeneration theorems, so these are the mixed Hodge numbers of H^*(X\B).
MixedHodgeTable mixed_hodge_numbers(const GsncModel& model, const HodgeAssignment& assignment);

struct HodgeFiltration {
    std::map<std::pair<int, int>, int> via_table;     // (n, r) from the MHS table
    std::map<std::pair<int, int>, int> via_f_slices;  // (n, r) from the F-graded E1
    bool consistent = false;
};

// Gr_F^r H^n two ways: summing the table over b, and directly from the
// F-graded E1 page. A mismatch flags an internal inconsistency.
HodgeFiltration hodge_filtration_dims(const GsncModel& model, const HodgeAssignment& assignment);

}  // namespace gsnc
