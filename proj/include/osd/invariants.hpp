#pragma once

#include <cstdint>
#include <stdexcept>

namespace osd {

class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Counts every violation since process start, including ones whose
/// exception a caller swallowed.
std::uint64_t invariant_failures();

[[noreturn]] void invariant_failed(const char* condition, const char* what, const char* file, int line);

}  // namespace osd

#if OSD_CHECK_INVARIANTS
#define OSD_INVARIANT(cond, what)                                               \
    do {                                                                        \
        if (!(cond)) ::osd::invariant_failed(#cond, (what), __FILE__, __LINE__); \
    } while (0)
#else
#define OSD_INVARIANT(cond, what) ((void)0)
#endif
