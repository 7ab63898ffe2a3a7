#pragma once

#include <stdexcept>
#include <string>

namespace evt {

// Base for everything this library throws, so callers can map failures
// to exit codes in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad interval, nonpositive data, length mismatch and similar misuse.
struct DomainError : Error {
    using Error::Error;
};

// Root bracketing failed: g(lo) and g(hi) have the same sign.
struct BracketError : Error {
    using Error::Error;
};

// Adaptive quadrature exhausted max_depth before reaching tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

// Invalid distribution or law parameter (alpha <= 0, beta <= 1, ...).
struct ParamError : Error {
    using Error::Error;
};

// Operation requires a different max-domain tag than the model carries.
struct DomainMismatch : Error {
    using Error::Error;
};

// Model carries no max-domain tag at all.
struct NoDomainError : Error {
    using Error::Error;
};

// Survival function underflowed to zero where a positive value is required.
struct TailUnderflow : Error {
    using Error::Error;
};

// A power integral failed to settle under refinement; signals a divergent
// integrand rather than a quadrature bug.
struct DivergentIntegral : Error {
    using Error::Error;
};

} // namespace evt
