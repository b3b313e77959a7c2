#pragma once

#include <stdexcept>
#include <string>

namespace greendiag {

// Every error in the library derives from Error so callers can distinguish
// library failures from genuine logic bugs.  The concrete types below are the
// ones callers are expected to branch on; each carries a human-readable
// message describing what was violated.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- exact linear algebra ---
// Rank-deficient system with free variables (consistent but underdetermined).
struct SingularSystem : Error {
    using Error::Error;
};
// No solution exists (a zero row meets a nonzero right-hand side).
struct InconsistentSystem : Error {
    using Error::Error;
};

// --- classification ---
// The potential/change-of-variables pair cannot carry a polynomial ansatz.
struct Inadmissible : Error {
    using Error::Error;
};
// Operation undefined for a constant potential (K = 0).
struct DegenerateCase : Error {
    using Error::Error;
};

// --- solver ---
// Precondition violation on solver inputs.
struct InadmissibleInput : Error {
    using Error::Error;
};
// Search exhausted every admissible (M0, N) pair; message carries the trace.
struct NotFound : Error {
    using Error::Error;
};

// --- numerics ---
// Argument outside the supported range of a special function.
struct DomainError : Error {
    using Error::Error;
};
// Closed-form evaluation requested where Q(p) <= 0 (no real branch).
struct BranchError : Error {
    using Error::Error;
};
// Floquet construction requested for p inside a spectral band (|trace| < 2).
struct InsideBand : Error {
    using Error::Error;
};
// Period map has coinciding eigenvalues (p sits at a band edge).
struct DegenerateEigenvectors : Error {
    using Error::Error;
};
// Large-|p| normalization check failed for a claimed solution.
struct AsymptoteFailure : Error {
    using Error::Error;
};
// Root finder did not locate the expected number of real roots of Q.
struct RootCountMismatch : Error {
    using Error::Error;
};
// Numeric evaluation needs a concrete change of variables, none attached.
struct MissingMap : Error {
    using Error::Error;
};
// Step-halving disagreement: the integrator cannot be trusted at this p.
struct NumericDrift : Error {
    using Error::Error;
};

// --- input handling ---
struct MalformedInput : Error {
    using Error::Error;
};

}  // namespace greendiag
