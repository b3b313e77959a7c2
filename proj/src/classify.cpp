#include "greendiag/classify.hpp"

#include <algorithm>

#include "greendiag/errors.hpp"

namespace greendiag {

Degrees degrees(const PotentialSpec& spec) {
    if (!spec.w.degree().has_value())
        throw InadmissibleInput("w(z) must be nonzero");
    Degrees d;
    d.K = spec.u.degree().value_or(0);
    d.L = *spec.w.degree() - 1;
    d.a = spec.w.leading();
    d.uK_norm = spec.u.coeff(d.K) / d.a;
    return d;
}

std::vector<long> m0_candidates(long L, const Rational& uK_norm, long m0_max) {
    std::vector<long> out;
    for (int s : {+1, -1}) {
        // M^2 + (L-1) M - 4 s uK_norm = 0, solved exactly.
        const Rational disc =
            Rational((L - 1) * (L - 1)) + Rational(16) * Rational(s) * uK_norm;
        if (disc.sign() < 0) continue;
        auto root = Rational::sqrt_exact(disc);
        if (!root) continue;
        const Rational M = (*root - Rational(L - 1)) / Rational(2);
        if (M.sign() <= 0 || !M.is_integer()) continue;
        const long m = M.to_long();
        if (m > m0_max) continue;
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

long n_min(long M0, long K) {
    if (K <= 0)
        throw DegenerateCase("a constant potential has no degree ladder");
    if (M0 <= 0) throw DomainError("M0 must be positive");
    return (M0 + K - 1) / K;
}

Classification admissible(const PotentialSpec& spec, long m0_max) {
    Classification c;
    c.deg = degrees(spec);
    if (c.deg.K == 0) {
        c.constant_potential = true;
        return c;
    }
    if (c.deg.L < 1)
        throw Inadmissible("w(z) must have degree at least 2 for a non-constant u");
    if (c.deg.K != c.deg.L - 1)
        throw Inadmissible("degree law violated: deg u must equal deg w - 2");
    auto cands = m0_candidates(c.deg.L, c.deg.uK_norm, m0_max);
    if (cands.empty())
        throw Inadmissible(
            "no positive integer gap count matches the leading coefficients");
    c.M0 = cands.front();
    c.N_min = n_min(c.M0, c.deg.K);
    return c;
}

}  // namespace greendiag
