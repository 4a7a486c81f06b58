#pragma once

#include <stdexcept>
#include <string>

namespace archvol {

/// A computed quantity contradicts a structural guarantee of the library
/// (interior fixed point of the C-power recursion, negative probability
/// cell, ...). These indicate an implementation bug, not bad user input.
class verification_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Request evaluated at an idempotent point u in {0,1}, where the
/// diminishing C-power sequence does not exist.
class idempotent_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Iteration budget exhausted before the stopping condition was met.
/// Carries the last iterate so the caller can decide whether a larger
/// budget would help.
class exhaustion_error : public std::runtime_error {
public:
    exhaustion_error(const std::string& what, double last_value)
        : std::runtime_error(what), last_value_(last_value) {}

    double last_value() const noexcept { return last_value_; }

private:
    double last_value_;
};

} // namespace archvol
