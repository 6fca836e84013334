#include "gsnc/report.hpp"

#include "gsnc/epoly.hpp"
#include "gsnc/errors.hpp"
#include "gsnc/model_io.hpp"
#include "gsnc/mv.hpp"
#include "gsnc/weight.hpp"

#include <json.hpp>

#include <ostream>
#include <sstream>

namespace gsnc {

namespace {

using json = nlohmann::ordered_json;

bool in_range(const RunConfig& config, int n) {
    if (!config.degree_range)
        return true;
    return n >= config.degree_range->first && n <= config.degree_range->second;
}

bool has_boundary(const GsncModel& model) {
    return !model.b_branch_ids.empty();
}

struct Reporter {
    const RunConfig& config;
    std::ostream& out;
    json doc;  // structured payload, emitted at the end of a run

    explicit Reporter(const RunConfig& cfg, std::ostream& stream) : config(cfg), out(stream) {
        doc["version"] = 1;
        doc["command"] = command_name(cfg.command);
    }

    bool structured() const { return config.format == RunConfig::Format::structured; }

    void flush() {
        if (structured())
            out << doc.dump(2) << "\n";
    }
};

void report_validate(Reporter& r, const ModelBundle& bundle, const ValidationReport& model_report,
                     const ValidationReport& hodge_report) {
    const bool ok = model_report.ok() && hodge_report.ok();
    if (r.structured()) {
        r.doc["valid"] = ok;
        r.doc["level"] = level(bundle.model);
        r.doc["strata"] = bundle.model.strata.size();
        json issues = json::array();
        for (const auto& issue : model_report.issues)
            issues.push_back(json{{"code", issue.code}, {"message", issue.message}});
        for (const auto& issue : hodge_report.issues)
            issues.push_back(json{{"code", issue.code}, {"message", issue.message}});
        r.doc["issues"] = std::move(issues);
        return;
    }
    if (ok) {
        r.out << "valid, level " << level(bundle.model) << ", " << bundle.model.strata.size()
              << " strata\n";
        return;
    }
    r.out << "invalid\n";
    for (const auto& issue : model_report.issues)
        r.out << "  " << issue.code << ": " << issue.message << "\n";
    for (const auto& issue : hodge_report.issues)
        r.out << "  " << issue.code << ": " << issue.message << "\n";
}

void report_betti(Reporter& r, const BettiTable& table) {
    json rows = json::array();
    for (std::size_t n = 0; n < table.betti.size(); ++n) {
        if (!in_range(r.config, static_cast<int>(n)))
            continue;
        json weights;
        std::ostringstream weight_text;
        for (const auto& [key, dim] : table.weights) {
            if (key.first != static_cast<int>(n))
                continue;
            weights[std::to_string(key.second)] = dim;
            weight_text << " w" << key.second << "=" << dim;
        }
        rows.push_back(json{{"n", n}, {"betti", table.betti[n]}, {"weights", weights}});
        if (!r.structured())
            r.out << "H^" << n << ": b=" << table.betti[n] << weight_text.str() << "\n";
    }
    if (r.structured())
        r.doc["betti"] = std::move(rows);
}

void report_mhs(Reporter& r, const MixedHodgeTable& table) {
    json rows = json::array();
    json weight_rows = json::array();
    for (const auto& [key, dim] : table.entries) {
        const auto [n, a, b] = key;
        if (!in_range(r.config, n))
            continue;
        rows.push_back(json{{"n", n}, {"a", a}, {"b", b}, {"dim", dim}});
        if (!r.structured())
            r.out << "h^{" << a << "," << b << "}(H^" << n << ") = " << dim << "\n";
    }
    for (const auto& [key, dim] : table.weights) {
        const auto [n, w] = key;
        if (!in_range(r.config, n))
            continue;
        weight_rows.push_back(json{{"n", n}, {"w", w}, {"dim", dim}});
        if (!r.structured())
            r.out << "gr^W_" << w << " H^" << n << " = " << dim << "\n";
    }
    if (r.structured()) {
        r.doc["mixed_hodge_numbers"] = std::move(rows);
        r.doc["weights"] = std::move(weight_rows);
    }
}

json epoly_json(const EPolynomial& e) {
    json terms = json::array();
    for (const auto& [key, c] : e.coefficients)
        terms.push_back(json{{"a", key.first}, {"b", key.second}, {"e", c}});
    return terms;
}

}  // namespace

std::optional<RunConfig::Command> parse_command(const std::string& name) {
    using Command = RunConfig::Command;
    if (name == "validate")
        return Command::validate;
    if (name == "betti")
        return Command::betti;
    if (name == "mhs")
        return Command::mhs;
    if (name == "epoly")
        return Command::epoly;
    if (name == "sheaf")
        return Command::sheaf;
    if (name == "cover-plan")
        return Command::cover_plan;
    if (name == "all")
        return Command::all;
    return std::nullopt;
}

const char* command_name(RunConfig::Command command) {
    switch (command) {
        case RunConfig::Command::validate: return "validate";
        case RunConfig::Command::betti: return "betti";
        case RunConfig::Command::mhs: return "mhs";
        case RunConfig::Command::epoly: return "epoly";
        case RunConfig::Command::sheaf: return "sheaf";
        case RunConfig::Command::cover_plan: return "cover-plan";
        case RunConfig::Command::all: return "all";
    }
    return "?";
}

int run_bundle(const RunConfig& config, const ModelBundle& bundle, std::ostream& out,
               std::ostream& err) {
    using Command = RunConfig::Command;
    Reporter reporter(config, out);
    try {
        const auto model_report = validate_model(bundle.model);
        ValidationReport hodge_report;
        if (model_report.ok())
            hodge_report = validate_hodge(bundle.model, bundle.hodge);

        if (config.command == Command::validate) {
            report_validate(reporter, bundle, model_report, hodge_report);
            reporter.flush();
            return model_report.ok() && hodge_report.ok() ? 0 : 1;
        }
        if (!model_report.ok() || !hodge_report.ok()) {
            report_validate(reporter, bundle, model_report, hodge_report);
            reporter.flush();
            return 1;
        }

        switch (config.command) {
            case Command::betti:
            case Command::sheaf: {
                if (has_boundary(bundle.model)) {
                    err << command_name(config.command) << " requires B = 0; model '"
                        << bundle.name << "' has b_branches\n";
                    return 1;
                }
                if (config.command == Command::betti) {
                    report_betti(reporter, cohomology_of_X(build_mv_complex(bundle.model,
                                                                            bundle.hodge)));
                } else {
                    const auto h = structure_sheaf_cohomology(bundle.model, bundle.hodge);
                    json rows = json::array();
                    for (std::size_t q = 0; q < h.size(); ++q) {
                        if (!in_range(config, static_cast<int>(q)))
                            continue;
                        rows.push_back(json{{"q", q}, {"dim", h[q]}});
                        if (!reporter.structured())
                            out << "h^" << q << "(O_X) = " << h[q] << "\n";
                    }
                    if (reporter.structured())
                        reporter.doc["structure_sheaf"] = std::move(rows);
                }
                break;
            }
            case Command::mhs:
                report_mhs(reporter, mixed_hodge_numbers(bundle.model, bundle.hodge));
                break;
            case Command::epoly: {
                const auto direct = e_polynomial_strata(bundle.model, bundle.hodge);
                const auto via_mhs =
                    e_polynomial_from_mhs(mixed_hodge_numbers(bundle.model, bundle.hodge));
                if (reporter.structured()) {
                    reporter.doc["e_polynomial"] = epoly_json(direct);
                    reporter.doc["oracle_match"] = direct == via_mhs;
                } else {
                    out << "E = " << direct.to_string() << "\n";
                    out << "oracle match: " << (direct == via_mhs ? "yes" : "NO") << "\n";
                }
                if (direct != via_mhs) {
                    err << "E-polynomial oracle mismatch on '" << bundle.name << "': strata route "
                        << direct.to_string() << " vs spectral route " << via_mhs.to_string()
                        << "\n";
                    reporter.flush();
                    return 1;
                }
                break;
            }
            case Command::cover_plan: {
                if (bundle.divisors.empty()) {
                    if (!reporter.structured())
                        out << "no divisors in model\n";
                    reporter.doc["cover_plans"] = json::array();
                    break;
                }
                json plans = json::array();
                for (const auto& divisor : bundle.divisors) {
                    const auto permissible = is_permissible(bundle.model, divisor);
                    if (!permissible.permissible) {
                        err << "divisor '" << divisor.id << "' is not permissible:";
                        for (const auto& w : permissible.witnesses)
                            err << " " << w << ";";
                        err << "\n";
                        reporter.flush();
                        return 1;
                    }
                    const auto plan = covering_plan(bundle.model, divisor);
                    if (reporter.structured()) {
                        json entry;
                        entry["divisor"] = divisor.id;
                        json mult, pullback;
                        for (const auto& [id, m] : plan.multiplicities)
                            mult[id] = m.str();
                        for (const auto& [id, c] : plan.pullback)
                            pullback[id] = c.str();
                        entry["multiplicities"] = std::move(mult);
                        entry["pullback"] = std::move(pullback);
                        entry["degree"] = plan.total_degree.str();
                        entry["lcm_alternative"] = plan.lcm_degree.str();
                        plans.push_back(std::move(entry));
                    } else {
                        out << "cover-plan " << divisor.id << ": m = {";
                        for (std::size_t i = 0; i < plan.multiplicities.size(); ++i)
                            out << (i ? ", " : "") << plan.multiplicities[i].first << ": "
                                << plan.multiplicities[i].second.str();
                        out << "}, pullback = {";
                        for (std::size_t i = 0; i < plan.pullback.size(); ++i)
                            out << (i ? ", " : "") << plan.pullback[i].first << ": "
                                << plan.pullback[i].second.str();
                        out << "}, degree " << plan.total_degree.str() << " (lcm alternative: "
                            << plan.lcm_degree.str() << ")\n";
                    }
                }
                if (reporter.structured())
                    reporter.doc["cover_plans"] = std::move(plans);
                break;
            }
            case Command::all: {
                if (!reporter.structured())
                    out << "validate: valid, level " << level(bundle.model) << ", "
                        << bundle.model.strata.size() << " strata\n";
                reporter.doc["valid"] = true;
                reporter.doc["level"] = level(bundle.model);
                reporter.doc["strata"] = bundle.model.strata.size();

                const auto table = mixed_hodge_numbers(bundle.model, bundle.hodge);
                report_mhs(reporter, table);

                const auto filtration = hodge_filtration_dims(bundle.model, bundle.hodge);
                if (!reporter.structured())
                    out << "hodge filtration two-way check: "
                        << (filtration.consistent ? "consistent" : "INCONSISTENT") << "\n";
                reporter.doc["hodge_filtration_consistent"] = filtration.consistent;

                const auto direct = e_polynomial_strata(bundle.model, bundle.hodge);
                const auto via_mhs = e_polynomial_from_mhs(table);
                const bool epoly_ok = direct == via_mhs;
                if (!reporter.structured()) {
                    out << "E = " << direct.to_string() << "\n";
                    out << "e-polynomial oracle: " << (epoly_ok ? "match" : "MISMATCH") << "\n";
                }
                reporter.doc["e_polynomial"] = epoly_json(direct);
                reporter.doc["oracle_match"] = epoly_ok;

                bool mv_ok = true;
                if (!has_boundary(bundle.model)) {
                    const auto betti =
                        cohomology_of_X(build_mv_complex(bundle.model, bundle.hodge));
                    report_betti(reporter, betti);
                    mv_ok = betti.betti == table.betti;
                    if (!reporter.structured())
                        out << "mayer-vietoris vs weight engine: " << (mv_ok ? "match" : "MISMATCH")
                            << "\n";
                    reporter.doc["mv_weight_match"] = mv_ok;

                    const auto sheaf = structure_sheaf_cohomology(bundle.model, bundle.hodge);
                    json rows = json::array();
                    for (std::size_t q = 0; q < sheaf.size(); ++q)
                        rows.push_back(json{{"q", q}, {"dim", sheaf[q]}});
                    reporter.doc["structure_sheaf"] = std::move(rows);
                    if (!reporter.structured()) {
                        out << "h^*(O_X) =";
                        for (int h : sheaf)
                            out << " " << h;
                        out << "\n";
                    }
                }

                if (!filtration.consistent || !epoly_ok || !mv_ok) {
                    err << "cross-check failure on '" << bundle.name << "'\n";
                    reporter.flush();
                    return 1;
                }
                break;
            }
            case Command::validate:
                break;
        }
        reporter.flush();
        return 0;
    } catch (const MathError& e) {
        err << "mathematical inconsistency: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const auto bundle = load_bundle(config.input_path);
        return run_bundle(config, bundle, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace gsnc
