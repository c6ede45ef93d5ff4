#pragma once

#include <stdexcept>
#include <string>

namespace homsim {

// Configuration / construction problems (bad grid sizes, empty beam lists, ...).
struct config_error : std::invalid_argument {
    explicit config_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Mismatched vector/matrix/grid dimensions.
struct dimension_error : std::invalid_argument {
    explicit dimension_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A numeric result left its guaranteed tolerance band (norm loss, range violation, ...).
struct accuracy_error : std::runtime_error {
    explicit accuracy_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A grid is too coarse to resolve the requested structure.
struct resolution_error : std::runtime_error {
    explicit resolution_error(const std::string& msg) : std::runtime_error(msg) {}
};

// All-zero or otherwise degenerate state where a direction is required.
struct degenerate_state_error : std::runtime_error {
    explicit degenerate_state_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated caller contract that is checked at runtime.
struct precondition_error : std::logic_error {
    explicit precondition_error(const std::string& msg) : std::logic_error(msg) {}
};

// Filesystem problems surfaced by the CLI.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace homsim
