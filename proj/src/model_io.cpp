#include "gsnc/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace gsnc {

namespace {

using json = nlohmann::ordered_json;

json matrix_to_json(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(rational_to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

QMatrix matrix_from_json(const json& rows) {
    if (!rows.is_array())
        throw ParseError("matrix entries must be an array of rows");
    std::vector<std::vector<Rational>> data;
    for (const auto& row : rows) {
        if (!row.is_array())
            throw ParseError("matrix rows must be arrays");
        std::vector<Rational> out;
        for (const auto& cell : row) {
            if (!cell.is_string())
                throw ParseError("matrix entries are rational strings like \"3/4\"");
            try {
                out.push_back(parse_rational(cell.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what());
            }
        }
        data.push_back(std::move(out));
    }
    try {
        return QMatrix::from_rows(data);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

json blocks_to_json(const std::map<HodgeKey, QMatrix>& blocks) {
    json out = json::array();
    for (const auto& [key, m] : blocks) {
        json entry;
        entry["degree"] = key.first;
        entry["hodge"] = key.second;
        entry["entries"] = matrix_to_json(m);
        out.push_back(std::move(entry));
    }
    return out;
}

std::map<HodgeKey, QMatrix> blocks_from_json(const json& doc) {
    std::map<HodgeKey, QMatrix> blocks;
    for (const auto& entry : doc) {
        const int degree = entry.at("degree").get<int>();
        const int hodge = entry.at("hodge").get<int>();
        blocks[{degree, hodge}] = matrix_from_json(entry.at("entries"));
    }
    return blocks;
}

const json* find_member(const json& doc, const char* key) {
    auto it = doc.find(key);
    return it == doc.end() ? nullptr : &*it;
}

}  // namespace

json bundle_to_json(const ModelBundle& bundle) {
    json doc;
    doc["schema_version"] = 1;
    doc["name"] = bundle.name;
    if (!bundle.description.empty())
        doc["description"] = bundle.description;

    doc["components"] = json::array();
    for (const auto& c : bundle.model.components)
        doc["components"].push_back(json{{"id", c.id}, {"dim", c.dim}});

    doc["b_branches"] = bundle.model.b_branch_ids;

    doc["strata"] = json::array();
    for (const auto& s : bundle.model.strata) {
        json entry;
        entry["id"] = s.id;
        entry["components"] = s.components;
        entry["b_branches"] = s.b_branches;
        entry["copy_index"] = s.copy_index;
        entry["codim"] = s.codim;
        entry["factor_type"] = s.factor_type;
        const auto* coh = bundle.hodge.stratum(s.id);
        if (coh && coh->is_model_stratum)
            entry["projective_product"] = coh->projective_factors;
        doc["strata"].push_back(std::move(entry));
    }

    doc["incidences"] = json::array();
    for (const auto& inc : bundle.model.incidences)
        doc["incidences"].push_back(
            json{{"lower", inc.lower}, {"upper", inc.upper}, {"sign", inc.sign}});

    // Custom (non-model) strata ship explicit Hodge data.
    json cohomology = json::array();
    for (const auto& s : bundle.model.strata) {
        const auto* coh = bundle.hodge.stratum(s.id);
        if (!coh || coh->is_model_stratum)
            continue;
        json entry;
        entry["stratum"] = s.id;
        entry["dimension"] = coh->dimension;
        json dims = json::array();
        for (const auto& [key, value] : coh->dims) {
            json piece{{"degree", key.first}, {"hodge", key.second}, {"dim", value}};
            auto labels = coh->basis_labels.find(key);
            if (labels != coh->basis_labels.end())
                piece["basis"] = labels->second;
            dims.push_back(std::move(piece));
        }
        entry["dims"] = std::move(dims);
        cohomology.push_back(std::move(entry));
    }
    if (!cohomology.empty())
        doc["cohomology"] = std::move(cohomology);

    doc["restrictions"] = json::array();
    for (const auto& restr : bundle.hodge.restrictions) {
        json entry;
        entry["source"] = restr.source;
        entry["target"] = restr.target;
        auto cm = bundle.class_maps.find({restr.source, restr.target});
        if (cm != bundle.class_maps.end()) {
            json images = json::array();
            for (const auto& row : cm->second) {
                json jrow = json::array();
                for (const auto& value : row)
                    jrow.push_back(value.str());
                images.push_back(std::move(jrow));
            }
            entry["class_images"] = std::move(images);
        } else {
            entry["matrices"] = blocks_to_json(restr.blocks);
        }
        doc["restrictions"].push_back(std::move(entry));
    }

    if (!bundle.hodge.gysins.empty()) {
        json gysins = json::array();
        for (const auto& g : bundle.hodge.gysins)
            gysins.push_back(json{{"source", g.source},
                                  {"target", g.target},
                                  {"matrices", blocks_to_json(g.blocks)}});
        doc["gysins"] = std::move(gysins);
    }

    json pairings = json::array();
    for (const auto& s : bundle.model.strata) {
        const auto* coh = bundle.hodge.stratum(s.id);
        const auto* pairing = bundle.hodge.pairing(s.id);
        if (!pairing || (coh && coh->is_model_stratum))
            continue;  // model strata regenerate their pairing on load
        pairings.push_back(
            json{{"stratum", s.id}, {"matrices", blocks_to_json(pairing->blocks)}});
    }
    if (!pairings.empty())
        doc["pairings"] = std::move(pairings);

    if (!bundle.divisors.empty()) {
        json divisors = json::array();
        for (const auto& d : bundle.divisors) {
            json entry;
            entry["id"] = d.id;
            json coeffs;
            for (const auto& [id, value] : d.coefficients)
                coeffs[id] = rational_to_string(value);
            entry["coefficients"] = std::move(coeffs);
            if (!d.support.empty()) {
                json meets, contains, hypotheses;
                for (const auto& s : d.support) {
                    meets[s.id] = s.meets_strata;
                    if (!s.contains_strata.empty())
                        contains[s.id] = s.contains_strata;
                    if (s.subset_of_b || s.distinct_supports || s.smooth_traces) {
                        json flags;
                        if (s.subset_of_b)
                            flags["subset_of_b"] = *s.subset_of_b;
                        if (s.distinct_supports)
                            flags["distinct_supports"] = *s.distinct_supports;
                        if (s.smooth_traces)
                            flags["smooth_traces"] = *s.smooth_traces;
                        hypotheses[s.id] = std::move(flags);
                    }
                }
                entry["meets_strata"] = std::move(meets);
                if (!contains.empty())
                    entry["contains_strata"] = std::move(contains);
                if (!hypotheses.empty())
                    entry["hypotheses"] = std::move(hypotheses);
            }
            divisors.push_back(std::move(entry));
        }
        doc["divisors"] = std::move(divisors);
    }
    return doc;
}

ModelBundle bundle_from_json(const json& doc) {
    try {
        if (!doc.is_object())
            throw ParseError("model file must hold a JSON object");
        if (!doc.contains("schema_version") || doc.at("schema_version").get<int>() != 1)
            throw ParseError("unsupported or missing schema_version (expected 1)");

        ModelBundle bundle;
        bundle.name = doc.value("name", std::string{});
        bundle.description = doc.value("description", std::string{});

        for (const auto& c : doc.value("components", json::array()))
            bundle.model.components.push_back(
                {c.at("id").get<std::string>(), c.at("dim").get<int>()});
        for (const auto& b : doc.value("b_branches", json::array()))
            bundle.model.b_branch_ids.push_back(b.get<std::string>());

        std::map<std::string, std::vector<int>> projective;
        std::set<std::string> stratum_ids;
        for (const auto& s : doc.value("strata", json::array())) {
            Stratum stratum;
            stratum.id = s.at("id").get<std::string>();
            for (const auto& c : s.at("components"))
                stratum.components.push_back(c.get<std::string>());
            for (const auto& b : s.value("b_branches", json::array()))
                stratum.b_branches.push_back(b.get<std::string>());
            stratum.copy_index = s.value("copy_index", 0);
            stratum.codim = s.at("codim").get<int>();
            for (const auto& f : s.value("factor_type", json::array()))
                stratum.factor_type.push_back(f.get<int>());
            if (const auto* pp = find_member(s, "projective_product")) {
                std::vector<int> factors;
                for (const auto& d : *pp)
                    factors.push_back(d.get<int>());
                projective[stratum.id] = std::move(factors);
            }
            stratum_ids.insert(stratum.id);
            bundle.model.strata.push_back(std::move(stratum));
        }

        for (const auto& inc : doc.value("incidences", json::array())) {
            Incidence incidence;
            incidence.lower = inc.at("lower").get<std::string>();
            incidence.upper = inc.at("upper").get<std::string>();
            incidence.sign = inc.at("sign").get<int>();
            bundle.model.incidences.push_back(std::move(incidence));
        }

        for (const auto& [id, factors] : projective) {
            auto data = make_projective_product(factors);
            data.cohomology.stratum = id;
            data.pairing.stratum = id;
            bundle.hodge.cohomology.emplace(id, std::move(data.cohomology));
            bundle.hodge.pairings.emplace(id, std::move(data.pairing));
        }

        for (const auto& entry : doc.value("cohomology", json::array())) {
            const auto id = entry.at("stratum").get<std::string>();
            if (!stratum_ids.count(id))
                throw ParseError("cohomology entry for unknown stratum '" + id + "'");
            if (bundle.hodge.cohomology.count(id))
                throw ParseError("stratum '" + id + "' has both projective_product and cohomology");
            StratumCohomology coh;
            coh.stratum = id;
            coh.dimension = entry.at("dimension").get<int>();
            for (const auto& piece : entry.at("dims")) {
                const HodgeKey key{piece.at("degree").get<int>(), piece.at("hodge").get<int>()};
                coh.dims[key] = piece.at("dim").get<int>();
                if (const auto* basis = find_member(piece, "basis")) {
                    std::vector<std::string> labels;
                    for (const auto& label : *basis)
                        labels.push_back(label.get<std::string>());
                    coh.basis_labels[key] = std::move(labels);
                }
            }
            bundle.hodge.cohomology.emplace(id, std::move(coh));
        }

        for (const auto& entry : doc.value("restrictions", json::array())) {
            const auto source = entry.at("source").get<std::string>();
            const auto target = entry.at("target").get<std::string>();
            if (!stratum_ids.count(source) || !stratum_ids.count(target))
                throw ParseError("restriction references unknown strata (" + source + " -> " +
                                 target + ")");
            if (const auto* images = find_member(entry, "class_images")) {
                std::vector<std::vector<Int>> class_map;
                for (const auto& row : *images) {
                    std::vector<Int> out;
                    for (const auto& cell : row)
                        out.push_back(cell.is_string() ? Int(cell.get<std::string>())
                                                       : Int(cell.get<long long>()));
                    class_map.push_back(std::move(out));
                }
                const auto* src = bundle.hodge.stratum(source);
                const auto* tgt = bundle.hodge.stratum(target);
                if (!src || !tgt)
                    throw ParseError("class_images restriction needs projective_product strata");
                try {
                    bundle.hodge.restrictions.push_back(
                        restriction_from_class_map(*src, *tgt, class_map));
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what());
                }
                bundle.class_maps[{source, target}] = std::move(class_map);
            } else {
                GradedMap map;
                map.source = source;
                map.target = target;
                map.kind = MapKind::restriction;
                map.blocks = blocks_from_json(entry.at("matrices"));
                bundle.hodge.restrictions.push_back(std::move(map));
            }
        }

        for (const auto& entry : doc.value("gysins", json::array())) {
            GradedMap map;
            map.source = entry.at("source").get<std::string>();
            map.target = entry.at("target").get<std::string>();
            map.kind = MapKind::gysin;
            map.blocks = blocks_from_json(entry.at("matrices"));
            bundle.hodge.gysins.push_back(std::move(map));
        }

        for (const auto& entry : doc.value("pairings", json::array())) {
            PdPairing pairing;
            pairing.stratum = entry.at("stratum").get<std::string>();
            pairing.blocks = blocks_from_json(entry.at("matrices"));
            bundle.hodge.pairings[pairing.stratum] = std::move(pairing);
        }

        for (const auto& entry : doc.value("divisors", json::array())) {
            QDivisor divisor;
            divisor.id = entry.at("id").get<std::string>();
            for (const auto& [id, value] : entry.at("coefficients").items()) {
                if (!value.is_string())
                    throw ParseError("divisor coefficients are rational strings");
                try {
                    divisor.coefficients.emplace_back(id, parse_rational(value.get<std::string>()));
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what());
                }
            }
            std::map<std::string, DivisorSupport> supports;
            auto support_of = [&](const std::string& id) -> DivisorSupport& {
                auto [it, inserted] = supports.emplace(id, DivisorSupport{});
                if (inserted)
                    it->second.id = id;
                return it->second;
            };
            if (const auto* meets = find_member(entry, "meets_strata"))
                for (const auto& [id, list] : meets->items())
                    for (const auto& s : list)
                        support_of(id).meets_strata.push_back(s.get<std::string>());
            if (const auto* contains = find_member(entry, "contains_strata"))
                for (const auto& [id, list] : contains->items())
                    for (const auto& s : list)
                        support_of(id).contains_strata.push_back(s.get<std::string>());
            if (const auto* hypotheses = find_member(entry, "hypotheses"))
                for (const auto& [id, flags] : hypotheses->items()) {
                    auto& support = support_of(id);
                    if (flags.contains("subset_of_b"))
                        support.subset_of_b = flags.at("subset_of_b").get<bool>();
                    if (flags.contains("distinct_supports"))
                        support.distinct_supports = flags.at("distinct_supports").get<bool>();
                    if (flags.contains("smooth_traces"))
                        support.smooth_traces = flags.at("smooth_traces").get<bool>();
                }
            for (auto& [id, support] : supports)
                divisor.support.push_back(std::move(support));
            bundle.divisors.push_back(std::move(divisor));
        }
        return bundle;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed model file: ") + e.what());
    }
}

std::string bundle_to_string(const ModelBundle& bundle) {
    return bundle_to_json(bundle).dump(2) + "\n";
}

ModelBundle load_bundle(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read model file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what());
    }
    return bundle_from_json(doc);
}

void save_bundle(const ModelBundle& bundle, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write model file '" + path + "'");
    out << bundle_to_string(bundle);
}

}  // namespace gsnc
