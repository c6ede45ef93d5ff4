#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace homsim::cli {

struct RunOptions {
    std::filesystem::path out_dir = ".";
    unsigned threads = 0;  // 0 = HOMSIM_THREADS env var, then hardware count
    bool gnuplot = false;
};

struct Diagnostics {
    std::vector<std::string> errors;    // schema violations (exit 2)
    std::vector<std::string> warnings;  // unknown fields and other non-fatal notes

    bool ok() const { return errors.empty(); }
};

/// Parses and validates scenario JSON without computing or writing anything.
Diagnostics validate_scenario_text(const std::string& text);

/// Runs a scenario, writing its CSV outputs and JSON sidecar under
/// opts.out_dir. Returns the paths written (relative to out_dir). Throws
/// config_error for schema problems, the numeric error types for module
/// failures and io_error for filesystem trouble. Nothing is written unless
/// the whole computation succeeded.
std::vector<std::string> run_scenario_text(const std::string& text, const RunOptions& opts);

struct CatalogEntry {
    const char* name;
    const char* description;
    const char* json;
};

/// Bundled example scenarios (one or more per acceptance-style experiment).
std::span<const CatalogEntry> scenario_catalog();

/// Resolves the worker count: explicit flag > HOMSIM_THREADS > hardware.
unsigned resolve_thread_count(unsigned flag_value);

}  // namespace homsim::cli
