#pragma once

// Independently derived closed forms for the one-gap and three-gap families
// over the cn^2 change of variables, written once in terms of mu = m^2 and
// kk = k^2 so tests can instantiate them at arbitrary parameter values.
// These are the frozen expected values the solver must reproduce exactly.

#include "greendiag/poly.hpp"

namespace refforms {

using greendiag::BiPoly;
using greendiag::Rational;
using greendiag::UniPoly;

// One gap: P(p,z) = p + mu (2 kk - 1) - mu kk z.
inline BiPoly one_gap_P(const Rational& mu, const Rational& kk) {
    BiPoly P;
    P.set_slice(0, UniPoly({mu * (Rational(2) * kk - Rational(1)), -mu * kk}));
    P.set_slice(1, UniPoly({Rational(1)}));
    return P;
}

// One gap: Q(p) = -p^3 - 2 mu (2kk - 1) p^2
//                 + mu^2 (kk (1 - kk) - (2kk - 1)^2) p + mu^3 kk (2kk - 1)(1 - kk).
inline UniPoly one_gap_Q(const Rational& mu, const Rational& kk) {
    const Rational one(1), two(2);
    const Rational t = two * kk - one;  // 2k^2 - 1
    return UniPoly({mu * mu * mu * kk * t * (one - kk),
                    mu * mu * (kk * (one - kk) - t * t), -two * mu * t,
                    Rational(-1)});
}

// Three gaps: the p-slices of P, lowest first.
inline BiPoly three_gap_P(const Rational& mu, const Rational& kk) {
    const Rational kk2 = kk * kk, kk3 = kk2 * kk;
    const Rational mu2 = mu * mu, mu3 = mu2 * mu;
    BiPoly P;
    P.set_slice(
        0, UniPoly({Rational(-3) * mu3 *
                        (Rational(12) - Rational(152) * kk + Rational(384) * kk2 -
                         Rational(256) * kk3),
                    Rational(-3) * mu3 *
                        (Rational(72) * kk - Rational(363) * kk2 + Rational(363) * kk3),
                    Rational(-3) * mu3 * (Rational(135) * kk2 - Rational(270) * kk3),
                    Rational(-3) * mu3 * Rational(75) * kk3}));
    P.set_slice(1, UniPoly({mu2 * (Rational(49) - Rational(256) * kk +
                                   Rational(256) * kk2),
                            mu2 * (Rational(78) * kk - Rational(156) * kk2),
                            mu2 * Rational(45) * kk2}));
    P.set_slice(2, UniPoly({mu * (Rational(-14) + Rational(28) * kk),
                            mu * Rational(-6) * kk}));
    P.set_slice(3, UniPoly({Rational(1)}));
    return P;
}

// Three gaps: Q(p) as minus the product of one linear and three quadratic
// factors in p.
inline UniPoly three_gap_Q(const Rational& mu, const Rational& kk) {
    const Rational kk2 = kk * kk;
    const Rational mu2 = mu * mu;
    const UniPoly f1({(Rational(-4) + Rational(8) * kk) * mu, Rational(1)});
    const UniPoly f2(
        {(Rational(9) - Rational(96) * kk + Rational(96) * kk2) * mu2,
         Rational(10) * (Rational(-1) + Rational(2) * kk) * mu, Rational(1)});
    const UniPoly f3(
        {(Rational(9) - Rational(42) * kk + Rational(33) * kk2) * mu2,
         Rational(2) * (Rational(-5) + Rational(7) * kk) * mu, Rational(1)});
    const UniPoly f4(
        {Rational(3) * kk * (Rational(-8) + Rational(11) * kk) * mu2,
         Rational(2) * (Rational(-2) + Rational(7) * kk) * mu, Rational(1)});
    return -(f1 * f2 * f3 * f4);
}

}  // namespace refforms
