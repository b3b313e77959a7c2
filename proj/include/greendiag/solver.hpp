#pragma once

#include <optional>
#include <string>
#include <variant>

#include "greendiag/potential.hpp"
#include "greendiag/solution.hpp"

namespace greendiag {

// Exact residual of the defining identity in the transformed variable.  For
// a true closed form it vanishes identically as a polynomial in (p, z):
//   R = 2 P (P_zz w + P_z w'/2) - (P_z)^2 w - 4 (u - p) P^2 + 4 Q,
// where subscripts are z-derivatives and w = (dz/dx)^2.
BiPoly build_residual(const BiPoly& P, const UniPoly& Q, const PotentialSpec& spec);

struct SolveFailure {
    std::string reason;
};

// Attempts the polynomial ansatz at fixed degrees: deg_p P = N with the
// lowest p-slice of z-degree M0.  The top slice is normalised to 1, each
// lower slice is filled from one residual slice of the degree ladder, the
// remaining z^0 coefficients are pinned by the consistency rows of the p^N
// slice, and the assembled (P, Q) is accepted only if the exact residual
// vanishes identically.  Returns the verified form or the reason this degree
// pair admits none.
std::variant<SolutionForm, SolveFailure> solve_for_degrees(const PotentialSpec& spec,
                                                           long M0, long N);

struct SolveOptions {
    std::optional<long> n_max;  // largest p-degree tried; default N_min + 3
    long m0_max = 12;           // cap for the gap-count candidate search
};

// Full pipeline: admissibility, degree search upward from the minimum, exact
// verification, and sign fix from the large-|p| behaviour.  Throws
// Inadmissible when the degree laws rule the potential out and NotFound when
// every attempted degree pair fails (the message lists each attempt).
SolutionForm solve(const PotentialSpec& spec, const SolveOptions& opts = {});

}  // namespace greendiag
