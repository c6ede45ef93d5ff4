#include "homsim/warnings.hpp"

#include <cstdio>
#include <mutex>
#include <utility>

namespace homsim::warnings {

namespace {

std::mutex g_mutex;
Handler g_handler;  // empty => stderr

}  // namespace

void set_handler(Handler handler) {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_handler = std::move(handler);
}

void emit(const std::string& message) {
    // Handlers are invoked under the lock so capturing handlers stay
    // race-free when worker threads warn concurrently.
    std::lock_guard<std::mutex> lock(g_mutex);
    if (g_handler) {
        g_handler(message);
    } else {
        std::fprintf(stderr, "[homsim] warning: %s\n", message.c_str());
    }
}

Capture::Capture() {
    std::lock_guard<std::mutex> lock(g_mutex);
    previous_ = g_handler;
    g_handler = [this](const std::string& m) { messages_.push_back(m); };
}

Capture::~Capture() {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_handler = previous_;
}

}  // namespace homsim::warnings
