#pragma once

#include <string>
#include <vector>

#include "greendiag/poly.hpp"

namespace greendiag {

// Closed form for the diagonal of the resolvent kernel:
//   G(p, x) = sigma * P(p, z(x)) / (2 sqrt(Q(p))),
// with P bivariate of p-degree N and Q univariate of degree 2N + 1 whose
// leading coefficient is -1.  M records the z-degree of each p-slice of P,
// indexed n = 0..N.  spec_hash ties the form to the potential bundle it was
// solved from.
struct SolutionForm {
    long N = 0;
    std::vector<int> M;
    BiPoly P;
    UniPoly Q;
    int sigma = 1;
    std::string spec_hash;

    friend bool operator==(const SolutionForm&, const SolutionForm&) = default;
};

// Canonical JSON serialization (stable key order, exact rational strings).
std::string emit_solution(const SolutionForm& sol);

// Parses the JSON layout only; deliberately does not enforce any algebraic
// invariants, so that corrupted documents can be loaded and then rejected by
// the residual and numeric checks.
SolutionForm parse_solution(const std::string& text);

// Human-readable rendering of the closed form.
std::string latex_solution(const SolutionForm& sol);

}  // namespace greendiag
