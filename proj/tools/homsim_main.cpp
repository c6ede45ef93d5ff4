// homsim: scenario-driven simulator for two-photon interferometry in the
// time-frequency phase space. See README.md for the scenario schema.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "homsim/errors.hpp"
#include "homsim/scenario.hpp"
#include "homsim/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw homsim::io_error("cannot read scenario file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_command(const std::string& file, const homsim::cli::RunOptions& opts) {
    const std::string text = read_file(file);
    const auto written = homsim::cli::run_scenario_text(text, opts);
    for (const std::string& name : written) {
        std::cout << "wrote " << (opts.out_dir / name).string() << "\n";
    }
    return kExitOk;
}

int validate_command(const std::string& file) {
    const std::string text = read_file(file);
    const homsim::cli::Diagnostics diag = homsim::cli::validate_scenario_text(text);
    for (const std::string& w : diag.warnings) std::cout << "warning: " << w << "\n";
    for (const std::string& e : diag.errors) std::cout << "error: " << e << "\n";
    if (!diag.ok()) return kExitSchema;
    std::cout << "ok\n";
    return kExitOk;
}

int examples_list() {
    for (const auto& entry : homsim::cli::scenario_catalog()) {
        std::printf("%-36s %s\n", entry.name, entry.description);
    }
    return kExitOk;
}

int examples_copy(const std::string& name, const std::filesystem::path& out_dir) {
    for (const auto& entry : homsim::cli::scenario_catalog()) {
        if (name == entry.name) {
            std::error_code ec;
            std::filesystem::create_directories(out_dir, ec);
            if (ec) throw homsim::io_error("cannot create output directory: " + out_dir.string());
            const std::filesystem::path path = out_dir / (name + std::string(".json"));
            std::ofstream out(path, std::ios::binary);
            if (!out) throw homsim::io_error("cannot open for writing: " + path.string());
            out << entry.json;
            if (!out) throw homsim::io_error("write failed: " + path.string());
            std::cout << "wrote " << path.string() << "\n";
            return kExitOk;
        }
    }
    std::cerr << "error: no bundled scenario named \"" << name << "\" (see `homsim examples list`)\n";
    return kExitSchema;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon interferometry in the time-frequency phase space"};
    app.set_version_flag("--version", std::string("homsim ") + homsim::kVersion);
    app.require_subcommand(1);

    std::string scenario_file;
    std::string out_dir = ".";
    unsigned threads = 0;  // 0: HOMSIM_THREADS env var, then hardware count
    bool gnuplot = false;

    CLI::App* run = app.add_subcommand("run", "Run a scenario file and write its outputs");
    run->add_option("file", scenario_file, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory (default: current)");
    run->add_option("--threads", threads, "Worker threads for sweeps");
    run->add_flag("--gnuplot", gnuplot, "Also emit a ready-to-run gnuplot script");

    CLI::App* validate = app.add_subcommand("validate", "Check a scenario file without computing");
    validate->add_option("file", scenario_file, "Scenario JSON file")->required();

    CLI::App* examples = app.add_subcommand("examples", "Bundled example scenarios");
    examples->require_subcommand(1);
    CLI::App* list = examples->add_subcommand("list", "List the bundled scenarios");
    std::string copy_name;
    CLI::App* copy = examples->add_subcommand("copy", "Write a bundled scenario to disk");
    copy->add_option("name", copy_name, "Scenario name from `examples list`")->required();
    copy->add_option("--out", out_dir, "Output directory (default: current)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitSchema;
    }

    try {
        if (run->parsed()) {
            homsim::cli::RunOptions opts;
            opts.out_dir = out_dir;
            opts.threads = threads;
            opts.gnuplot = gnuplot;
            return run_command(scenario_file, opts);
        }
        if (validate->parsed()) return validate_command(scenario_file);
        if (list->parsed()) return examples_list();
        if (copy->parsed()) return examples_copy(copy_name, out_dir);
    } catch (const homsim::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const homsim::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        // dimension/accuracy/resolution/degenerate/precondition failures
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
