#include "gsnc/model_io.hpp"
#include "gsnc/report.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace gsnc;

namespace {

int run_to_strings(const RunConfig& config, const ModelBundle& bundle, std::string* out_text) {
    std::ostringstream out, err;
    const int status = run_bundle(config, bundle, out, err);
    if (out_text)
        *out_text = out.str();
    return status;
}

ModelBundle corpus_model(const std::string& name) {
    for (auto& bundle : bundled_examples())
        if (bundle.name == name)
            return bundle;
    FAIL("unknown corpus model ", name);
    return {};
}

}  // namespace

TEST_CASE("bundles round-trip through JSON byte-identically") {
    for (const auto& bundle : bundled_examples()) {
        const auto text = bundle_to_string(bundle);
        const auto reloaded = bundle_from_json(nlohmann::ordered_json::parse(text));
        CHECK(bundle_to_string(reloaded) == text);
        CHECK(validate_model(reloaded.model).ok());
        CHECK(validate_hodge(reloaded.model, reloaded.hodge).ok());
        // restrictions and pairings survive the trip
        CHECK(reloaded.hodge.restrictions.size() == bundle.hodge.restrictions.size());
        CHECK(reloaded.hodge.pairings.size() == bundle.hodge.pairings.size());
    }
}

TEST_CASE("the bundled corpus ships at least six valid models") {
    const auto corpus = bundled_examples();
    CHECK(corpus.size() >= 6);
    for (const auto& bundle : corpus) {
        CHECK(validate_model(bundle.model).ok());
        CHECK(validate_hodge(bundle.model, bundle.hodge).ok());
    }
}

TEST_CASE("repo model files match the builder serialization") {
    for (const auto& bundle : bundled_examples()) {
        const std::string path = std::string(GSNC_SOURCE_MODELS_DIR) + "/" + bundle.name + ".json";
        std::ifstream in(path);
        REQUIRE_MESSAGE(in.good(), "missing ", path,
                        " (regenerate with: gsnc-invariants examples --write-dir models)");
        std::stringstream content;
        content << in.rdbuf();
        CHECK_MESSAGE(content.str() == bundle_to_string(bundle), path, " is stale");
    }
}

TEST_CASE("schema errors are parse errors") {
    CHECK_THROWS_AS(bundle_from_json(nlohmann::ordered_json::parse("{}")), ParseError);
    CHECK_THROWS_AS(bundle_from_json(nlohmann::ordered_json::parse(R"({"schema_version": 2})")),
                    ParseError);
    CHECK_THROWS_AS(bundle_from_json(nlohmann::ordered_json::parse(
                        R"({"schema_version": 1, "strata": [{"id": "s"}]})")),
                    ParseError);
    // rationals must be strings
    const char* bad_divisor = R"({"schema_version": 1, "components": [], "strata": [],
        "divisors": [{"id": "D", "coefficients": {"d": 0.75}}]})";
    CHECK_THROWS_AS(bundle_from_json(nlohmann::ordered_json::parse(bad_divisor)), ParseError);
}

TEST_CASE("run() exit codes") {
    RunConfig config;
    config.command = RunConfig::Command::validate;
    SUBCASE("missing file is a parse error") {
        config.input_path = "/nonexistent/model.json";
        std::ostringstream out, err;
        CHECK(run(config, out, err) == 2);
    }
    SUBCASE("invalid model exits 1 with a report") {
        auto bundle = corpus_model("nodal-curve");
        bundle.model.incidences[0].sign = -bundle.model.incidences[0].sign;
        std::string text;
        CHECK(run_to_strings(config, bundle, &text) == 1);
        CHECK(text.find("sign-square") != std::string::npos);
    }
}

TEST_CASE("validate reports level and strata count") {
    RunConfig config;
    config.command = RunConfig::Command::validate;
    std::string text;
    CHECK(run_to_strings(config, corpus_model("cxc"), &text) == 0);
    CHECK(text == "valid, level 2, 9 strata\n");
}

TEST_CASE("mhs command prints the C^* table rows") {
    RunConfig config;
    config.command = RunConfig::Command::mhs;
    std::string text;
    CHECK(run_to_strings(config, corpus_model("p1-two-points"), &text) == 0);
    CHECK(text.find("h^{1,1}(H^1) = 1") != std::string::npos);
    CHECK(text.find("h^{0,0}(H^0) = 1") != std::string::npos);
}

TEST_CASE("cover-plan command reports the degree-24 plan") {
    RunConfig config;
    config.command = RunConfig::Command::cover_plan;
    std::string text;
    CHECK(run_to_strings(config, corpus_model("p1-two-points"), &text) == 0);
    CHECK(text.find("degree 24") != std::string::npos);
    CHECK(text.find("lcm alternative: 12") != std::string::npos);
}

TEST_CASE("reports are byte-stable across runs") {
    for (const char* name : {"cxc", "p1-two-points", "cycle-3-lines"}) {
        const auto bundle = corpus_model(name);
        for (auto command : {RunConfig::Command::validate, RunConfig::Command::mhs,
                             RunConfig::Command::epoly, RunConfig::Command::all}) {
            RunConfig config;
            config.command = command;
            std::string first, second;
            const int status1 = run_to_strings(config, bundle, &first);
            const int status2 = run_to_strings(config, bundle, &second);
            CHECK(status1 == 0);
            CHECK(status1 == status2);
            CHECK(first == second);

            config.format = RunConfig::Format::structured;
            std::string structured;
            CHECK(run_to_strings(config, bundle, &structured) == 0);
            const auto doc = nlohmann::ordered_json::parse(structured);
            CHECK(doc.at("version") == 1);  // version field mandatory
        }
    }
}

TEST_CASE("the all command runs every applicable analysis") {
    RunConfig config;
    config.command = RunConfig::Command::all;
    std::string text;
    CHECK(run_to_strings(config, corpus_model("cycle-3-lines"), &text) == 0);
    CHECK(text.find("hodge filtration two-way check: consistent") != std::string::npos);
    CHECK(text.find("e-polynomial oracle: match") != std::string::npos);
    CHECK(text.find("mayer-vietoris vs weight engine: match") != std::string::npos);
    CHECK(text.find("h^*(O_X) = 1 1 0") != std::string::npos);

    // pair model: MV/sheaf are skipped, the rest runs
    CHECK(run_to_strings(config, corpus_model("p1-two-points"), &text) == 0);
    CHECK(text.find("mayer-vietoris") == std::string::npos);
}

TEST_CASE("betti and sheaf refuse pair models") {
    RunConfig config;
    config.command = RunConfig::Command::betti;
    CHECK(run_to_strings(config, corpus_model("p1-two-points"), nullptr) == 1);
    config.command = RunConfig::Command::sheaf;
    CHECK(run_to_strings(config, corpus_model("nodal-boundary"), nullptr) == 1);
}

TEST_CASE("degree ranges restrict report rows") {
    RunConfig config;
    config.command = RunConfig::Command::betti;
    config.degree_range = {{2, 4}};
    std::string text;
    CHECK(run_to_strings(config, corpus_model("cxc"), &text) == 0);
    CHECK(text.find("H^0") == std::string::npos);
    CHECK(text.find("H^2: b=4") != std::string::npos);
    CHECK(text.find("H^4: b=4") != std::string::npos);
}

TEST_CASE("unknown commands are rejected before any file is read") {
    CHECK_FALSE(parse_command("frobnicate").has_value());
    CHECK(parse_command("cover-plan").has_value());
    CHECK(parse_command("all").has_value());
}
