#pragma once

#include <functional>
#include <string>
#include <vector>

namespace homsim::warnings {

using Handler = std::function<void(const std::string&)>;

// Replaces the process-wide warning sink. Passing an empty handler restores
// the default (stderr). Thread safe.
void set_handler(Handler handler);

void emit(const std::string& message);

// RAII capture of warnings, for tests and for the CLI sidecar.
class Capture {
public:
    Capture();
    ~Capture();
    Capture(const Capture&) = delete;
    Capture& operator=(const Capture&) = delete;

    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::vector<std::string> messages_;
    Handler previous_;
};

}  // namespace homsim::warnings
