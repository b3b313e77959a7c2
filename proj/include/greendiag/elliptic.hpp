#pragma once

#include "greendiag/errors.hpp"

namespace greendiag {

// Complete elliptic integral of the first kind, K(k), parameterized by
// m = k^2 with 0 <= m < 1.  Computed by the arithmetic-geometric mean:
// K = pi / (2 * AGM(1, sqrt(1 - m))).  Relative error <= 1e-14 over the
// stated domain.  Throws DomainError outside [0, 1).
double ellint_K(double k2);

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

// Jacobi elliptic functions sn(x|m), cn(x|m), dn(x|m) with m = k^2 in [0, 1].
// Degenerate moduli use the closed forms (trig at m = 0, hyperbolic at
// m = 1); otherwise the descending Landen (Gauss) transformation drives the
// modulus to zero and the amplitude is rebuilt on the way back up.  Absolute
// error <= 1e-12 for |x| <= 4K(m).  Throws DomainError for m outside [0, 1].
JacobiTriple jacobi_cn_sn_dn(double x, double k2);

// Parameter bundle for one modulus: caches K(m) so grid evaluations don't
// recompute the AGM.
struct EllipticParams {
    explicit EllipticParams(double k2_in) : k2(k2_in), Kk(ellint_K(k2_in)) {}
    double k2;
    double Kk;
};

}  // namespace greendiag
