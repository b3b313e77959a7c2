#include "greendiag/oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "greendiag/errors.hpp"
#include "greendiag/solver.hpp"

namespace greendiag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Mat2 madd(const Mat2& x, const Mat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}
Mat2 mscl(const Mat2& x, double s) { return {x.a * s, x.b * s, x.c * s, x.d * s}; }
Mat2 mmul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}
double max_abs(const Mat2& m) {
    return std::max({std::fabs(m.a), std::fabs(m.b), std::fabs(m.c), std::fabs(m.d)});
}

// First-order system for y'' = (U(x) - p) y.
Mat2 system_at(const PotentialSpec& spec, double p, double x) {
    return {0.0, 1.0, spec.potential(x) - p, 0.0};
}

// Classic RK4 on the 2x2 fundamental matrix, fixed step.
Mat2 rk4_fundamental(const PotentialSpec& spec, double p, double x0, double x1,
                     int steps) {
    Mat2 Y{};  // identity
    if (steps <= 0 || x1 == x0) return Y;
    const double h = (x1 - x0) / steps;
    for (int i = 0; i < steps; ++i) {
        const double x = x0 + i * h;
        const Mat2 A1 = system_at(spec, p, x);
        const Mat2 A2 = system_at(spec, p, x + h / 2);
        const Mat2 A3 = system_at(spec, p, x + h);
        const Mat2 k1 = mmul(A1, Y);
        const Mat2 k2 = mmul(A2, madd(Y, mscl(k1, h / 2)));
        const Mat2 k3 = mmul(A2, madd(Y, mscl(k2, h / 2)));
        const Mat2 k4 = mmul(A3, madd(Y, mscl(k3, h)));
        Y = madd(Y, mscl(madd(madd(k1, mscl(k2, 2)), madd(mscl(k3, 2), k4)), h / 6));
    }
    return Y;
}

double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

std::vector<double> poly_doubles(const UniPoly& f) {
    std::vector<double> out;
    for (const auto& c : f.coeffs()) out.push_back(c.to_double());
    return out;
}

std::vector<double> derivative_doubles(const std::vector<double>& c) {
    std::vector<double> out;
    for (std::size_t i = 1; i < c.size(); ++i)
        out.push_back(static_cast<double>(i) * c[i]);
    return out;
}

// Synthetic division by (x - r); remainder discarded.
std::vector<double> deflate(const std::vector<double>& c, double r) {
    const std::size_t d = c.size() - 1;
    std::vector<double> out(d);
    double carry = c[d];
    for (std::size_t i = d; i-- > 0;) {
        out[i] = carry;
        carry = c[i] + r * carry;
    }
    return out;
}

std::optional<double> first_root_in(const std::vector<double>& c, double lo, double hi) {
    constexpr int kScan = 65536;
    double xl = lo, fl = horner(c, xl);
    for (int i = 1; i <= kScan; ++i) {
        const double xr = lo + (hi - lo) * i / kScan;
        const double fr = horner(c, xr);
        if (fl == 0.0) return xl;
        if (fl * fr < 0.0) {
            double a = xl, b = xr, fa = fl;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = horner(c, m);
                if (fm == 0.0) return m;
                if (fa * fm < 0.0)
                    b = m;
                else {
                    a = m;
                    fa = fm;
                }
            }
            return 0.5 * (a + b);
        }
        xl = xr;
        fl = fr;
    }
    if (fl == 0.0) return xl;
    return std::nullopt;
}

double newton_polish(const std::vector<double>& c, const std::vector<double>& dc,
                     double r) {
    for (int i = 0; i < 100; ++i) {
        const double f = horner(c, r);
        const double df = horner(dc, r);
        if (df == 0.0) break;
        const double step = f / df;
        r -= step;
        if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(r))) break;
    }
    return r;
}

}  // namespace

double eval_G(const SolutionForm& sol, const PotentialSpec& spec, double p, double x) {
    const double Qv = eval_double(sol.Q, p);
    if (Qv <= 0.0)
        throw BranchError("Q(p) is not positive: p sits on the wrong branch");
    const double z = spec.map_z(x);
    return sol.sigma * eval_double(sol.P, p, z) / (2.0 * std::sqrt(Qv));
}

double det_fma(const Mat2& m) {
    const double w = m.b * m.c;
    const double e = std::fma(-m.b, m.c, w);
    const double f = std::fma(m.a, m.d, -w);
    return f + e;
}

Mat2 monodromy(const PotentialSpec& spec, double p, const OracleConfig& cfg,
               double det_tol) {
    if (!spec.period.has_value())
        throw DomainError("monodromy needs a periodic map");
    const double T = *spec.period;
    const int fine_steps = cfg.richardson ? 2 * cfg.steps : cfg.steps;
    const Mat2 fine = rk4_fundamental(spec, p, 0.0, T, fine_steps);
    if (cfg.richardson) {
        const Mat2 coarse = rk4_fundamental(spec, p, 0.0, T, cfg.steps);
        const double scale = std::max(1.0, max_abs(fine));
        const double drift = max_abs(madd(fine, mscl(coarse, -1.0))) / scale;
        if (drift > 1e-9)
            throw NumericDrift("half-step disagreement " + std::to_string(drift) +
                               " in the monodromy integration");
    }
    // The determinant is preserved by the flow exactly; numerically it is
    // 1 + O(eps * |entries|^2) because it is quadratic in the accumulated
    // entries, so the tolerance scales with that quadratic magnitude.
    const double det = det_fma(fine);
    const double det_scale = std::max(1.0, max_abs(fine) * max_abs(fine));
    if (std::fabs(det - 1.0) > det_tol * det_scale)
        throw NumericDrift("monodromy determinant drifted to " + std::to_string(det));
    return fine;
}

double floquet_green_diag(const PotentialSpec& spec, double p, double x,
                          const OracleConfig& cfg) {
    if (!spec.period.has_value())
        throw DomainError("Floquet evaluation needs a periodic map");
    const double T = *spec.period;
    const Mat2 M = monodromy(spec, p, cfg);
    const double tr = M.a + M.d;
    if (std::fabs(tr) < 2.0 - 1e-12)
        throw InsideBand("p lies in the spectrum: |trace| < 2");
    if (std::fabs(tr) <= 2.0 + 1e-12)
        throw DegenerateEigenvectors("band edge: the Floquet solutions coincide");

    const double sgn = tr >= 0 ? 1.0 : -1.0;
    const double lam_big = (tr + sgn * std::sqrt(tr * tr - 4.0)) / 2.0;
    const double lam_small = det_fma(M) / lam_big;
    // Eigenvector of M for lam, from whichever row of M - lam I is better
    // conditioned; (y, y') initial data.
    auto eigvec = [&](double lam) {
        const double n1 = std::hypot(M.b, lam - M.a);
        const double n2 = std::hypot(lam - M.d, M.c);
        return n1 >= n2 ? std::pair<double, double>(M.b, lam - M.a)
                        : std::pair<double, double>(lam - M.d, M.c);
    };
    const auto [phi0, phi0p] = eigvec(lam_big);   // growing solution
    const auto [psi0, psi0p] = eigvec(lam_small);  // decaying solution

    double xr = std::fmod(x, T);
    if (xr < 0) xr += T;
    // The growing solution is propagated forward from 0 and the decaying one
    // backward from T (via the adjugate of the [xr, T] flow): each is the
    // dominant mode in its own direction, so neither picks up contamination
    // from the other.  Normalizing by the Wronskian evaluated at x itself
    // (constant in exact arithmetic) cancels every scalar factor on either
    // solution, including the eigenvalue scale left on psi.
    Mat2 Y1{};  // identity when xr == 0
    if (xr > 0) {
        const int n1 =
            std::max(1, static_cast<int>(std::ceil(2.0 * cfg.steps * xr / T)));
        Y1 = rk4_fundamental(spec, p, 0.0, xr, n1);
    }
    const int n2 =
        std::max(1, static_cast<int>(std::ceil(2.0 * cfg.steps * (T - xr) / T)));
    const Mat2 Y2 = rk4_fundamental(spec, p, xr, T, n2);
    const double phix = Y1.a * phi0 + Y1.b * phi0p;
    const double phixp = Y1.c * phi0 + Y1.d * phi0p;
    const double psix = Y2.d * psi0 - Y2.b * psi0p;
    const double psixp = -Y2.c * psi0 + Y2.a * psi0p;
    const double Wx = phixp * psix - psixp * phix;
    if (Wx == 0.0)
        throw DegenerateEigenvectors("the Floquet eigenvectors are parallel");
    return phix * psix / Wx;
}

double residual3_numeric(const SolutionForm& sol, const PotentialSpec& spec, double p,
                         double x, double h) {
    auto g = [&](double xx) { return eval_G(sol, spec, p, xx); };
    const double G = g(x);
    const double Gp1 = g(x + h), Gm1 = g(x - h);
    const double Gp2 = g(x + 2 * h), Gm2 = g(x - 2 * h);
    const double G1 = (-Gp2 + 8 * Gp1 - 8 * Gm1 + Gm2) / (12 * h);
    const double G2 = (-Gp2 + 16 * Gp1 - 30 * G + 16 * Gm1 - Gm2) / (12 * h * h);
    const double U = spec.potential(x);
    return std::fabs(2 * G * G2 - G1 * G1 - 4 * (U - p) * G * G + 1.0);
}

BandEdgeReport band_edges_check(const SolutionForm& sol, const PotentialSpec& spec,
                                const OracleConfig& cfg) {
    const long expected = 2 * sol.N + 1;
    BandEdgeReport rep;
    const std::vector<double> q = poly_doubles(sol.Q);
    if (q.size() < 2) {
        if (expected != 0)
            throw RootCountMismatch("Q has no roots but 2N+1 = " +
                                    std::to_string(expected) + " are required");
        return rep;
    }

    // Cauchy bound on the root magnitudes.
    double bound = 0.0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i)
        bound = std::max(bound, std::fabs(q[i] / q.back()));
    bound += 1.0;

    std::vector<double> work = q;
    while (work.size() >= 2) {
        const auto r = first_root_in(work, -bound, bound);
        if (!r) break;
        rep.roots.push_back(*r);
        work = deflate(work, *r);
    }

    const std::vector<double> dq = derivative_doubles(q);
    for (auto& r : rep.roots) r = newton_polish(q, dq, r);
    std::sort(rep.roots.begin(), rep.roots.end());

    if (static_cast<long>(rep.roots.size()) != expected)
        throw RootCountMismatch("found " + std::to_string(rep.roots.size()) +
                                " real roots of Q, expected " +
                                std::to_string(expected));

    for (const double r : rep.roots) {
        const double df = horner(dq, r);
        rep.root_errors.push_back(df == 0.0 ? kInf : std::fabs(horner(q, r) / df));
    }
    if (spec.period.has_value()) {
        for (const double r : rep.roots) {
            const Mat2 M = monodromy(spec, r, cfg);
            rep.trace_errors.push_back(std::fabs(std::fabs(M.a + M.d) - 2.0));
        }
    }
    return rep;
}

VerificationReport verify_solution(const SolutionForm& sol, const PotentialSpec& spec,
                                   const Tolerances& tol, const OracleConfig& cfg,
                                   int grid_x) {
    if (!spec.period.has_value())
        throw DomainError("verification needs a periodic map");
    if (grid_x < 1) throw DomainError("grid_x must be positive");
    const double T = *spec.period;
    VerificationReport rep;

    rep.summary.exact_residual_zero = build_residual(sol.P, sol.Q, spec).is_zero();

    {
        const double pa = -1e6;
        const double z = spec.map_z(0.37);
        const double Qv = eval_double(sol.Q, pa);
        rep.summary.asymptote_err =
            Qv > 0 ? std::fabs(sol.sigma * eval_double(sol.P, pa, z) *
                                   std::sqrt(-pa) / std::sqrt(Qv) -
                               1.0)
                   : kInf;
    }

    rep.bands = band_edges_check(sol, spec, cfg);

    // Anchor p below the numeric minimum of U, then three quartile points in
    // every finite spectral gap (Q > 0 and |trace| > 2 at the midpoint).
    double umin = kInf;
    for (int i = 0; i < 1024; ++i)
        umin = std::min(umin, spec.potential(i * T / 1024));
    std::vector<double> ps{umin - 5.0};
    const std::vector<double> qd = poly_doubles(sol.Q);
    const auto& roots = rep.bands.roots;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        const double mid = 0.5 * (roots[i] + roots[i + 1]);
        if (horner(qd, mid) <= 0.0) continue;
        bool outside = false;
        try {
            const Mat2 M = monodromy(spec, mid, cfg, tol.det);
            outside = std::fabs(M.a + M.d) > 2.0;
        } catch (const Error&) {
            outside = false;
        }
        if (!outside) continue;
        for (const double f : {0.25, 0.5, 0.75})
            ps.push_back(roots[i] + f * (roots[i + 1] - roots[i]));
    }

    // The closed form takes the positive square root of Q at every admissible
    // p, while the Floquet construction carries the analytic branch, which
    // flips sign each time p crosses a spectral band (a pair of Q roots).
    // Put the Floquet value on the closed form's branch before comparing.
    auto branch_sign = [&roots](double p) {
        std::size_t below = 0;
        for (const double r : roots)
            if (r < p) ++below;
        return (below / 2) % 2 == 0 ? 1.0 : -1.0;
    };

    double maxdis = 0.0, maxres3 = 0.0;
    for (const double p : ps) {
        const double bsign = branch_sign(p);
        for (int j = 0; j < grid_x; ++j) {
            const double x = (j + 0.5) * T / grid_x;
            VerificationPoint pt{x, p, kNaN, kNaN, kNaN};
            try {
                pt.G_closed = eval_G(sol, spec, p, x);
            } catch (const Error&) {
            }
            try {
                pt.G_floquet = bsign * floquet_green_diag(spec, p, x, cfg);
            } catch (const Error&) {
            }
            try {
                pt.residual3 = residual3_numeric(sol, spec, p, x);
            } catch (const Error&) {
            }
            const bool ok =
                std::isfinite(pt.G_closed) && std::isfinite(pt.G_floquet);
            maxdis = std::max(maxdis, ok ? std::fabs(pt.G_closed - pt.G_floquet) : kInf);
            maxres3 =
                std::max(maxres3, std::isfinite(pt.residual3) ? pt.residual3 : kInf);
            rep.points.push_back(pt);
        }
    }

    // Denser residual grid: 32 x-points at 4 p-values.
    std::vector<double> ps3(ps.begin(),
                            ps.begin() + std::min<std::size_t>(4, ps.size()));
    while (ps3.size() < 4)
        ps3.push_back(umin - 5.0 - 3.0 * static_cast<double>(ps3.size()));
    for (const double p : ps3) {
        for (int j = 0; j < 32; ++j) {
            const double x = (j + 0.5) * T / 32;
            double v;
            try {
                v = residual3_numeric(sol, spec, p, x);
            } catch (const Error&) {
                v = kInf;
            }
            maxres3 = std::max(maxres3, v);
        }
    }

    rep.summary.max_abs_disagreement = maxdis;
    rep.summary.max_residual3 = maxres3;
    bool bands_ok = true;
    for (const double e : rep.bands.root_errors)
        if (!(e <= tol.band_root)) bands_ok = false;
    for (const double e : rep.bands.trace_errors)
        if (!(e <= tol.band_trace)) bands_ok = false;
    rep.summary.pass = rep.summary.exact_residual_zero &&
                       rep.summary.asymptote_err <= tol.asymptote &&
                       maxdis <= tol.agreement && maxres3 <= tol.residual3 && bands_ok;
    return rep;
}

std::string report_json(const VerificationReport& rep) {
    nlohmann::ordered_json j;
    auto pts = nlohmann::ordered_json::array();
    for (const auto& pt : rep.points) {
        nlohmann::ordered_json o;
        o["x"] = pt.x;
        o["p"] = pt.p;
        o["G_closed"] = pt.G_closed;
        o["G_floquet"] = pt.G_floquet;
        o["residual3"] = pt.residual3;
        pts.push_back(std::move(o));
    }
    j["points"] = std::move(pts);
    nlohmann::ordered_json s;
    s["max_abs_disagreement"] = rep.summary.max_abs_disagreement;
    s["max_residual3"] = rep.summary.max_residual3;
    auto table = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rep.bands.roots.size(); ++i) {
        nlohmann::ordered_json row;
        row["root"] = rep.bands.roots[i];
        row["root_err"] = rep.bands.root_errors[i];
        if (rep.bands.trace_errors.size() == rep.bands.roots.size())
            row["trace_err"] = rep.bands.trace_errors[i];
        table.push_back(std::move(row));
    }
    s["band_edge_table"] = std::move(table);
    s["asymptote_err"] = rep.summary.asymptote_err;
    s["exact_residual_zero"] = rep.summary.exact_residual_zero;
    s["pass"] = rep.summary.pass;
    j["summary"] = std::move(s);
    return j.dump(2);
}

std::string report_csv(const VerificationReport& rep) {
    std::string out = "x,p,G_closed,G_floquet,residual3\n";
    char buf[256];
    for (const auto& pt : rep.points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", pt.x, pt.p,
                      pt.G_closed, pt.G_floquet, pt.residual3);
        out += buf;
    }
    return out;
}

}  // namespace greendiag
