#include "osd/invariants.hpp"

#include <atomic>
#include <string>

namespace osd {

namespace {
std::atomic<std::uint64_t> g_failures{0};
}

std::uint64_t invariant_failures() { return g_failures.load(); }

void invariant_failed(const char* condition, const char* what, const char* file, int line) {
    g_failures.fetch_add(1);
    throw InvariantViolation(std::string(file) + ":" + std::to_string(line) + ": " + what + " (" + condition + ")");
}

}  // namespace osd
