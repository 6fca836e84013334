#pragma once

#include "gsnc/divisor.hpp"
#include "gsnc/hodge.hpp"
#include "gsnc/model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gsnc {

// A model with its Hodge data and optional divisors; what a model file holds.
struct ModelBundle {
    std::string name;
    std::string description;
    GsncModel model;
    HodgeAssignment hodge;
    std::vector<QDivisor> divisors;
    // Builder-generated restrictions keep their integer class maps around so
    // files can ship the compact form.
    std::map<std::pair<std::string, std::string>, std::vector<std::vector<Int>>> class_maps;
};

// Desk-scale generators. All strata are products of projective spaces with
// monomial bases; restriction maps are ring maps given by class images,
// Gysin maps derive from the intersection pairing.
ModelBundle smooth_product(const std::string& name, const std::vector<int>& factor_dims);
ModelBundle nodal_curve();
ModelBundle chain_of_lines(int n);
ModelBundle cycle_of_lines(int n);
ModelBundle p1_with_boundary_points(int points);  // 2 points = the C^* pair
ModelBundle nodal_with_boundary_point();
ModelBundle p2_with_lines(int lines);  // 1 or 2 boundary lines on P^2

// (X1, B1) x (X2, B2): components, strata and branches multiply; second-
// factor incidence signs pick up (-1)^codim of the first factor (Koszul).
ModelBundle product_bundle(const std::string& name, const ModelBundle& a, const ModelBundle& b);

// The bundled corpus shipped with the CLI; every entry passes validation
// and the cross-check suites.
std::vector<ModelBundle> bundled_examples();

// Deterministic random valid pair models, <= 30 strata. `order_seed`
// shuffles the declared component/branch order, regenerating all incidence
// signs under the permuted global order (gauge change).
ModelBundle random_bundle(std::uint64_t seed);
ModelBundle random_bundle(std::uint64_t seed, std::uint64_t order_seed);

// Sign gauge twist: multiplies each incidence sign by g(lower)*g(upper),
// g = +-1 per stratum. Preserves validity; reported dimensions must not move.
GsncModel gauge_twist(const GsncModel& model, const std::vector<int>& stratum_gauge);

}  // namespace gsnc
