#pragma once

#include <vector>

#include "greendiag/rational.hpp"

namespace greendiag {

// Solves A x = b exactly over the rationals by Gaussian elimination.
//
// A is row-major and may be rectangular: consistent overdetermined systems
// succeed (the extra rows are checked, not discarded).  The pivot in each
// column is the remaining entry whose double approximation has the largest
// magnitude; this keeps the exact arithmetic from ballooning on badly scaled
// inputs while changing nothing about the (exact) result.
//
// Throws:
//   SingularSystem      -- consistent but rank-deficient (free variables),
//   InconsistentSystem  -- a zero row meets a nonzero right-hand side.
//
// The returned vector is re-verified against every input row by exact
// substitution before it is handed back.
std::vector<Rational> solve_linear_exact(std::vector<std::vector<Rational>> A,
                                         std::vector<Rational> b);

}  // namespace greendiag
