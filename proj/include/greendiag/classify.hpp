#pragma once

#include <vector>

#include "greendiag/potential.hpp"
#include "greendiag/rational.hpp"

namespace greendiag {

// Degree data read off a potential bundle: K = deg u, L = deg w - 1, a the
// (signed) leading coefficient of w, and uK_norm = u_K / a.  uK_norm is
// invariant under rescaling z, which makes it the right handle for the gap
// count below.
struct Degrees {
    long K = 0;
    long L = 0;
    Rational a;
    Rational uK_norm;
};

Degrees degrees(const PotentialSpec& spec);

// Positive integers M <= m0_max with M^2 + (L-1) M = 4 s uK_norm for either
// sign s, i.e. candidate z-degrees for the lowest ansatz slice.  Both signs
// are tried so that either orientation convention for w is accepted.
std::vector<long> m0_candidates(long L, const Rational& uK_norm, long m0_max = 12);

// Smallest admissible p-degree for a given lowest-slice z-degree: ceil(M0/K).
// A constant potential (K = 0) has no such ladder.
long n_min(long M0, long K);

struct Classification {
    bool constant_potential = false;  // K = 0: handled by a closed form
    Degrees deg;
    long M0 = 0;
    long N_min = 0;
};

// Decides whether the bundle can carry a polynomial closed form and computes
// the starting degrees.  Throws Inadmissible when the degree laws fail or no
// integer gap count fits.
Classification admissible(const PotentialSpec& spec, long m0_max = 12);

}  // namespace greendiag
