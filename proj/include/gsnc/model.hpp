#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gsnc {

// Combinatorial stratification of a GSNC pair (X, B). Components and
// B-branches label the "vertices" of the dual complex; strata are its cells,
// one cell of dimension codim per stratum. Everything is immutable after
// validation and safe to share across threads.

struct Component {
    std::string id;
    int dim = 0;  // complex dimension of X; equal across components
};

struct Stratum {
    std::string id;
    std::vector<std::string> components;  // component ids containing the stratum
    std::vector<std::string> b_branches;  // B-branch ids vanishing on it
    int copy_index = 0;                   // distinguishes copies of one intersection
    int codim = 0;                        // complex codimension in X
    std::vector<int> factor_type;         // simplex dims of the dual cell, sum = codim
};

struct Incidence {
    std::string lower;  // stratum of codim n+1
    std::string upper;  // stratum of codim n
    int sign = 1;       // +1 or -1, cellular incidence number
};

struct GsncModel {
    std::string name;
    std::vector<Component> components;
    std::vector<Stratum> strata;
    std::vector<Incidence> incidences;
    std::vector<std::string> b_branch_ids;
};

struct ValidationIssue {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    void add(std::string code, std::string message) {
        issues.push_back({std::move(code), std::move(message)});
    }
    std::string to_string() const;
};

// Indexed view of a structurally sane model: cover lists, ancestor sets,
// minimal X-proper ancestors. Construction requires that all ids resolve;
// run validate_model first for anything user-supplied.
class Poset {
public:
    explicit Poset(const GsncModel& model);

    const GsncModel& model() const { return *model_; }
    int stratum_index(const std::string& id) const;  // -1 when unknown

    struct Cover {
        int stratum;  // neighbour index
        int sign;
    };
    // covers_up[i]: incidences with lower = i (one codim less, containing i)
    // covers_down[i]: incidences with upper = i
    const std::vector<Cover>& covers_up(int i) const { return up_[i]; }
    const std::vector<Cover>& covers_down(int i) const { return down_[i]; }

    // All strata containing i (reflexive).
    const std::vector<int>& ancestors(int i) const { return anc_[i]; }
    bool contains(int small, int big) const;  // big contains small (big above small)

    // Codim of the unique minimal X-proper stratum containing i; the
    // stratum itself when it carries no B-cuts. nullopt when not unique.
    std::optional<int> min_x_ancestor(int i) const { return x_anchor_[i]; }
    bool is_x_proper(int i) const;

private:
    const GsncModel* model_;
    std::vector<std::vector<Cover>> up_, down_;
    std::vector<std::vector<int>> anc_;
    std::vector<std::optional<int>> x_anchor_;  // index of minimal X-proper ancestor
};

// Structural + poset validation per the pair axioms. Empty report = valid.
ValidationReport validate_model(const GsncModel& model);

// Strata of codimension n, in input order. Empty for n beyond dim.
std::vector<Stratum> strata_of_codim(const GsncModel& model, int n);

// Maximum number of local equations: max length of factor_type, 0 if smooth.
int level(const GsncModel& model);

// Stored incidence sign for the cover relation sub < super; throws
// std::invalid_argument("not an incidence") for non-cover pairs.
int mv_sign(const GsncModel& model, const std::string& sub, const std::string& super);

// Sign convention used by the generators: adding element c to the sorted
// defining set S costs (-1)^|{s in S : s < c}|, with B-branches ordered
// before components (declaration order within each group).
int insertion_sign(const std::vector<std::string>& branch_order,
                   const std::vector<std::string>& component_order,
                   const std::vector<std::string>& upper_branches,
                   const std::vector<std::string>& upper_components,
                   const std::string& added, bool added_is_branch);

}  // namespace gsnc
