#pragma once

#include "gsnc/matrix.hpp"
#include "gsnc/model.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gsnc {

// (degree n, Hodge index a): dimension of the (a, n-a) piece of H^n.
using HodgeKey = std::pair<int, int>;

struct StratumCohomology {
    std::string stratum;
    int dimension = 0;  // complex dimension of the stratum
    std::map<HodgeKey, int> dims;
    std::map<HodgeKey, std::vector<std::string>> basis_labels;
    // Set for strata generated as products of projective spaces; such strata
    // get monomial bases, automatic pairings and ring-map restrictions.
    std::vector<int> projective_factors;
    bool is_model_stratum = false;

    int dim_at(int degree, int hodge) const {
        auto it = dims.find({degree, hodge});
        return it == dims.end() ? 0 : it->second;
    }
    int betti(int degree) const;
    long long euler_characteristic() const;
};

enum class MapKind { restriction, gysin };

// Degree-indexed matrix blocks between two strata, row-per-source-basis.
// Restriction blocks preserve (n, a); Gysin blocks send (n, a) to
// (n+2, a+1), one Tate twist per unit of codimension.
struct GradedMap {
    std::string source;
    std::string target;
    MapKind kind = MapKind::restriction;
    std::map<HodgeKey, QMatrix> blocks;  // keyed by source (n, a)

    const QMatrix* block(int degree, int hodge) const {
        auto it = blocks.find({degree, hodge});
        return it == blocks.end() ? nullptr : &it->second;
    }
};

// Cup-product pairing blocks <H^{n,a}, H^{2d-n,d-a}> -> Q, row-per-first-factor.
struct PdPairing {
    std::string stratum;
    std::map<HodgeKey, QMatrix> blocks;
};

struct HodgeAssignment {
    std::map<std::string, StratumCohomology> cohomology;
    std::vector<GradedMap> restrictions;
    std::vector<GradedMap> gysins;
    std::map<std::string, PdPairing> pairings;

    const StratumCohomology* stratum(const std::string& id) const;
    const GradedMap* restriction(const std::string& source, const std::string& target) const;
    const GradedMap* gysin(const std::string& source, const std::string& target) const;
    const PdPairing* pairing(const std::string& id) const;
};

struct ModelStratumData {
    StratumCohomology cohomology;
    PdPairing pairing;
};

// Cohomology of P^{n1} x ... x P^{nk} with the monomial basis in the
// hyperplane classes h_i (lex order, h1 > h2 > ...). All classes are of
// type (a, a); the pairing extracts the coefficient of the top monomial.
// An empty factor list or zero entries degenerate to a point.
ModelStratumData make_projective_product(const std::vector<int>& factor_dims);

// Ring-map restriction between model strata: class_images[i][j] is the
// coefficient of the j-th target hyperplane class in the image of h_{i+1}.
// Monomials exceeding a target factor dimension truncate to zero.
GradedMap restriction_from_class_map(const StratumCohomology& source,
                                     const StratumCohomology& target,
                                     const std::vector<std::vector<Int>>& class_images);

// Poincare-duality adjoint of a restriction: the Gysin map g with
// <restr(x), y>_target = <x, g(y)>_source, raising degree by 2 and the
// Hodge index by 1. Throws std::domain_error on singular pairing blocks.
GradedMap gysin_from_pd(const GradedMap& restriction,
                        const StratumCohomology& source,
                        const StratumCohomology& target,
                        const PdPairing& source_pairing,
                        const PdPairing& target_pairing);

// Multiplication by a class on a model stratum, as blocks on the monomial
// basis. `klass` is given in hyperplane-class coordinates.
std::map<HodgeKey, QMatrix> cup_with_class(const StratumCohomology& stratum,
                                           const std::vector<Int>& klass);

// Hodge symmetry, H^0 normalization, presence and shapes of the restriction
// maps, and signed commutation around every codim-2 square (the d^2 = 0
// input downstream). Mathematical inconsistencies are reported, not thrown.
ValidationReport validate_hodge(const GsncModel& model, const HodgeAssignment& assignment);

// Restriction map for an incidence, or null with `why` set.
const GradedMap* find_restriction(const HodgeAssignment& assignment,
                                  const std::string& upper, const std::string& lower,
                                  std::string* why);

// Gysin map for a B-type incidence lower < upper: the stored one when
// present, otherwise derived from the pairings. Throws MathError-style
// std::runtime_error naming the incidence when neither route exists.
GradedMap resolve_gysin(const HodgeAssignment& assignment,
                        const std::string& lower, const std::string& upper);

}  // namespace gsnc
