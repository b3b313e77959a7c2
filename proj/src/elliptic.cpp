#include "greendiag/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace greendiag {

namespace {
constexpr int kMaxIter = 32;
constexpr double kAgmTol = 1e-16;
}  // namespace

double ellint_K(double k2) {
    if (!(k2 >= 0.0) || k2 >= 1.0) throw DomainError("ellint_K: k^2 must lie in [0, 1)");
    double a = 1.0;
    double b = std::sqrt(1.0 - k2);
    // AGM iteration; quadratic convergence, ~5 rounds for any admissible m.
    for (int i = 0; i < kMaxIter && std::fabs(a - b) > kAgmTol * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (2.0 * a);
}

JacobiTriple jacobi_cn_sn_dn(double x, double k2) {
    if (!(k2 >= 0.0) || k2 > 1.0) throw DomainError("jacobi_cn_sn_dn: k^2 must lie in [0, 1]");
    if (k2 == 0.0) return {std::sin(x), std::cos(x), 1.0};
    if (k2 == 1.0) {
        const double s = 1.0 / std::cosh(x);
        return {std::tanh(x), s, s};
    }

    // Descending Landen transformation in AGM form (Abramowitz & Stegun
    // 16.4): run a_i, b_i, c_i down until c_N vanishes, seed the amplitude
    // with phi_N = 2^N a_N x, then fold it back with
    //   sin(2 phi_{i-1} - phi_i) = (c_i / a_i) sin(phi_i).
    double a[kMaxIter + 1], c[kMaxIter + 1];
    a[0] = 1.0;
    c[0] = std::sqrt(k2);
    double b = std::sqrt(1.0 - k2);
    int n = 0;
    while (n < kMaxIter && std::fabs(c[n]) > kAgmTol * a[n]) {
        const double an = 0.5 * (a[n] + b);
        const double cn1 = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
        a[n] = an;
        c[n] = cn1;
    }

    double phi = std::ldexp(a[n] * x, n);
    for (int i = n; i >= 1; --i) {
        const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(s));
    }

    JacobiTriple out;
    out.sn = std::sin(phi);
    out.cn = std::cos(phi);
    // dn is bounded below by sqrt(1 - m) > 0 here, so this form is stable.
    out.dn = std::sqrt(std::max(0.0, 1.0 - k2 * out.sn * out.sn));
    return out;
}

}  // namespace greendiag
