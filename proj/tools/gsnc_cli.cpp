// Command-line front end: validates model files and reports cohomological
// invariants of GSNC pairs. See README.md for the file schema.

#include "gsnc/model_io.hpp"
#include "gsnc/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

bool parse_degrees(const std::string& text, std::pair<int, int>& range) {
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        return false;
    try {
        range.first = std::stoi(text.substr(0, sep));
        range.second = std::stoi(text.substr(sep + 2));
    } catch (const std::exception&) {
        return false;
    }
    return range.first <= range.second;
}

int run_examples(const std::string& write_dir) {
    const auto corpus = gsnc::bundled_examples();
    for (const auto& bundle : corpus) {
        std::cout << bundle.name << ": " << bundle.description << " (" << bundle.model.strata.size()
                  << " strata)\n";
        if (!write_dir.empty()) {
            const std::string path = write_dir + "/" + bundle.name + ".json";
            gsnc::save_bundle(bundle, path);
            std::cout << "  wrote " << path << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cohomological invariants of generalized simple normal crossing pairs"};
    app.require_subcommand(0, 1);

    std::string command_name;
    std::string input_path;
    std::string format_name = "text";
    std::string degrees;
    app.add_option("--command", command_name, "one of: validate, betti, mhs, epoly, sheaf, cover-plan, all");
    app.add_option("--input", input_path, "model file (JSON schema, see README)");
    app.add_option("--format", format_name, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--degrees", degrees, "restrict report rows to degrees a..b");

    std::string write_dir;
    auto* examples = app.add_subcommand("examples", "list or export the bundled model corpus");
    examples->add_option("--write-dir", write_dir, "directory to write the bundled model files to");

    CLI11_PARSE(app, argc, argv);

    try {
        if (examples->parsed())
            return run_examples(write_dir);

        if (command_name.empty()) {
            std::cerr << "error: --command is required (or use the 'examples' subcommand)\n";
            return 2;
        }
        const auto command = gsnc::parse_command(command_name);
        if (!command) {
            std::cerr << "error: unknown command '" << command_name << "'\n";
            return 2;
        }
        if (input_path.empty()) {
            std::cerr << "error: --input is required\n";
            return 2;
        }

        gsnc::RunConfig config;
        config.command = *command;
        config.input_path = input_path;
        config.format = format_name == "structured" ? gsnc::RunConfig::Format::structured
                                                    : gsnc::RunConfig::Format::text;
        if (!degrees.empty()) {
            std::pair<int, int> range;
            if (!parse_degrees(degrees, range)) {
                std::cerr << "error: --degrees expects a..b with a <= b\n";
                return 2;
            }
            config.degree_range = range;
        }
        return gsnc::run(config, std::cout, std::cerr);
    } catch (const gsnc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
