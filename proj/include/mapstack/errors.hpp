#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mapstack {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input document or a violated precondition on caller data.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class ParseError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// An enumeration would exceed its configured size limit. `estimate` is a
// lower bound on the work that was requested, or 0 when unknown.
class BoundExceeded : public Error {
public:
    BoundExceeded(std::string what, std::size_t bound, std::size_t estimate = 0)
        : Error(what + " (bound " + std::to_string(bound) +
                (estimate ? ", estimate " + std::to_string(estimate) : std::string()) + ")"),
          bound_(bound), estimate_(estimate) {}

    std::size_t bound() const noexcept { return bound_; }
    std::size_t estimate() const noexcept { return estimate_; }

private:
    std::size_t bound_;
    std::size_t estimate_;
};

// A structural check that must hold by construction did not. Always a bug.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

namespace detail {

// Saturating multiply for size estimates.
inline std::size_t sat_mul(std::size_t a, std::size_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > static_cast<std::size_t>(-1) / b) return static_cast<std::size_t>(-1);
    return a * b;
}

inline std::size_t sat_add(std::size_t a, std::size_t b) {
    return a > static_cast<std::size_t>(-1) - b ? static_cast<std::size_t>(-1) : a + b;
}

inline std::size_t sat_pow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r = sat_mul(r, base);
    return r;
}

} // namespace detail

} // namespace mapstack
