#pragma once

#include <string>
#include <vector>

#include "greendiag/potential.hpp"
#include "greendiag/solution.hpp"

namespace greendiag {

// Settings for the numeric cross-checks.  `steps` is the RK4 step count per
// period; with `richardson` set, every monodromy is recomputed at half the
// step and the two must agree to ~1e-9 relative, otherwise NumericDrift.
struct OracleConfig {
    int steps = 4096;
    bool richardson = true;
};

// Test tolerances, all configurable from the command line.
struct Tolerances {
    double agreement = 1e-8;   // |G_closed - G_floquet| on the grid
    double residual3 = 1e-6;   // numeric residual of the defining identity
    double band_root = 1e-9;   // estimated error of each polished root of Q
    double band_trace = 1e-5;  // ||tr| - 2| at each root of Q
    double asymptote = 1e-3;   // |2 sqrt(-p) G - 1| at p = -1e6
    double det = 1e-9;         // |det - 1| of the monodromy matrix
};

// Closed-form evaluation of the diagonal; BranchError when Q(p) <= 0.
double eval_G(const SolutionForm& sol, const PotentialSpec& spec, double p, double x);

struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;
};

// Kahan's fma-compensated 2x2 determinant: the plain a*d - b*c loses ~1e-6
// of relative accuracy to cancellation once the entries reach ~1e3, far
// above the 1e-9 budget for the Wronskian check.
double det_fma(const Mat2& m);

// Fundamental matrix of y'' = (U(x) - p) y over one period, from a fixed-step
// RK4 on the first-order system.  Throws NumericDrift when the half-step
// re-run or the unit-determinant identity disagrees beyond tolerance, and
// DomainError when the spec carries no period.
Mat2 monodromy(const PotentialSpec& spec, double p, const OracleConfig& cfg = {},
               double det_tol = 1e-9);

// Independent value of the diagonal from the two Floquet solutions:
// G = phi(x) psi(x) / W0 with phi growing, psi decaying, W0 their Wronskian
// at 0.  InsideBand when |tr| < 2 (p sits in the spectrum),
// DegenerateEigenvectors when |tr| = 2 to machine precision.
double floquet_green_diag(const PotentialSpec& spec, double p, double x,
                          const OracleConfig& cfg = {});

// Numeric residual of 2 G G'' - (G')^2 - 4 (U(x) - p) G^2 + 1 at one point,
// with G from the closed form and derivatives from 5-point central stencils.
double residual3_numeric(const SolutionForm& sol, const PotentialSpec& spec, double p,
                         double x, double h = 1e-3);

// All real roots of Q found by scan + bisection + deflation, then polished on
// the original polynomial.  The count must be exactly 2N+1, else
// RootCountMismatch.  root_errors holds the Newton-step estimate |Q/Q'| at
// each root; trace_errors holds ||tr| - 2| at each root when the map is
// periodic (band edges are exactly the periodic/antiperiodic points).
struct BandEdgeReport {
    std::vector<double> roots;
    std::vector<double> root_errors;
    std::vector<double> trace_errors;
};
BandEdgeReport band_edges_check(const SolutionForm& sol, const PotentialSpec& spec,
                                const OracleConfig& cfg = {});

struct VerificationPoint {
    double x, p, G_closed, G_floquet, residual3;
};

struct VerificationSummary {
    double max_abs_disagreement = 0;
    double max_residual3 = 0;
    double asymptote_err = 0;
    bool exact_residual_zero = false;
    bool pass = false;
};

struct VerificationReport {
    std::vector<VerificationPoint> points;
    BandEdgeReport bands;
    VerificationSummary summary;
};

// Full independent verification of a closed form against the numeric oracle:
// exact residual, band edges, large-|p| behaviour, and a grid comparison of
// closed-form against Floquet values at one anchor p below the spectrum plus
// three quartile points in every finite gap (grid_x points in x per p).
// Non-finite entries mark points where an evaluation failed; they fail the
// corresponding tolerance.
VerificationReport verify_solution(const SolutionForm& sol, const PotentialSpec& spec,
                                   const Tolerances& tol = {},
                                   const OracleConfig& cfg = {}, int grid_x = 16);

std::string report_json(const VerificationReport& rep);
std::string report_csv(const VerificationReport& rep);

}  // namespace greendiag
