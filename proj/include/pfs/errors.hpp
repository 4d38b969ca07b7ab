#pragma once

#include <stdexcept>
#include <string>

namespace pfs {

// Bad user input: unknown group name, non-prime p, malformed file.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The working field does not split some algebra that had to split.
struct SplitFieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A pointed fusion system failed one of its structural conditions.
struct AxiomViolation : std::runtime_error {
    std::string witness;
    AxiomViolation(const std::string& what, std::string w)
        : std::runtime_error(what), witness(std::move(w)) {}
};

// Something the theory guarantees did not happen; indicates a bug.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

inline void check_internal(bool ok, const std::string& msg) {
    if (!ok) throw InternalInconsistency(msg);
}

}  // namespace pfs
