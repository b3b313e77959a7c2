#include "greendiag/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "greendiag/classify.hpp"
#include "greendiag/errors.hpp"
#include "greendiag/linsolve.hpp"
#include "sympoly.hpp"

namespace greendiag {

namespace {

using SymUni = UniPolyT<SymPoly>;
using SymBi = BiPolyT<SymPoly>;

// The residual with the 4Q term left out, over any coefficient ring C.  Its
// z^0 rows in each p-slice are exactly -4 q_j for a consistent Q.
template <class C>
BiPolyT<C> residual_no_q(const BiPolyT<C>& P, const PotentialSpec& spec) {
    auto lift = [](const UniPoly& f) {
        return BiPolyT<C>::from_z_poly(
            f.template map<C>([](const Rational& r) { return C(r); }));
    };
    auto cst = [](long v) {
        return BiPolyT<C>::from_z_poly(UniPolyT<C>::constant(C(Rational(v))));
    };
    const BiPolyT<C> w = lift(spec.w);
    const BiPolyT<C> wp_half = lift(spec.w.derivative().scaled(Rational(1, 2)));
    const BiPolyT<C> u = lift(spec.u);
    const BiPolyT<C> pvar(
        std::vector<UniPolyT<C>>{UniPolyT<C>(), UniPolyT<C>::constant(C(Rational(1)))});
    const BiPolyT<C> Pz = P.dz();
    const BiPolyT<C> Pzz = Pz.dz();
    return cst(2) * P * (Pzz * w + Pz * wp_half) - Pz * Pz * w -
           cst(4) * (u - pvar) * P * P;
}

SymPoly substitute_all(SymPoly e, const std::map<int, Rational>& assign) {
    for (const auto& [v, val] : assign) e = e.substituted(v, val);
    return e;
}

constexpr int kMaxBranchDepth = 8;
constexpr std::size_t kMaxCandidates = 64;

// Completes an assignment of the symbolic z^0 coefficients so that the given
// consistency rows vanish.  Strategy, in order: rows that have become linear
// in a single variable are solved directly; a row quadratic in a single
// variable branches over its (exact) rational roots; when neither applies but
// every remaining row is jointly affine, one exact linear solve finishes the
// job; anything still undetermined is set to zero.  Every completed
// assignment is only a candidate -- the caller re-checks the full residual
// exactly, so this search can be heuristic without risking a wrong result.
void resolve(std::vector<SymPoly> eqs, std::map<int, Rational> assign, int num_vars,
             int depth, std::vector<std::map<int, Rational>>& out) {
    if (out.size() >= kMaxCandidates) return;
    auto zero_fill_emit = [&]() {
        for (int v = 0; v < num_vars; ++v)
            if (!assign.count(v)) assign.emplace(v, Rational(0));
        out.push_back(std::move(assign));
    };
    for (;;) {
        std::vector<SymPoly> cur;
        for (const auto& e : eqs) {
            SymPoly s = substitute_all(e, assign);
            if (s.is_zero()) continue;
            if (s.is_constant()) return;  // contradiction: dead branch
            cur.push_back(std::move(s));
        }
        eqs = std::move(cur);
        if (eqs.empty()) {
            zero_fill_emit();
            return;
        }

        // single-variable linear rows first (kept in the given row order)
        bool progress = false;
        for (const auto& e : eqs) {
            const auto vs = e.vars();
            if (vs.size() == 1 && e.is_affine()) {
                assign[vs[0]] = -(e.affine_constant() / e.affine_coeff(vs[0]));
                progress = true;
                break;
            }
        }
        if (progress) continue;

        // single-variable quadratic rows: branch on the exact roots
        for (const auto& e : eqs) {
            const auto vs = e.vars();
            if (vs.size() != 1) continue;
            const auto cs = e.single_var_coeffs(vs[0]);
            if (cs.size() != 3) continue;
            const Rational disc = cs[1] * cs[1] - Rational(4) * cs[2] * cs[0];
            if (disc.sign() < 0) return;
            const auto root = Rational::sqrt_exact(disc);
            if (!root) return;  // irrational roots: nothing exact down here
            std::vector<Rational> roots{(-cs[1] - *root) / (Rational(2) * cs[2])};
            if (!root->is_zero())
                roots.push_back((-cs[1] + *root) / (Rational(2) * cs[2]));
            std::sort(roots.begin(), roots.end());
            if (depth >= kMaxBranchDepth) return;
            for (const auto& r : roots) {
                auto branch = assign;
                branch[vs[0]] = r;
                resolve(eqs, std::move(branch), num_vars, depth + 1, out);
            }
            return;
        }

        // stall: if everything left is jointly affine, one linear solve
        const bool all_affine =
            std::all_of(eqs.begin(), eqs.end(), [](const SymPoly& e) { return e.is_affine(); });
        if (all_affine) {
            std::vector<int> cols;
            for (const auto& e : eqs)
                for (int v : e.vars())
                    if (std::find(cols.begin(), cols.end(), v) == cols.end())
                        cols.push_back(v);
            std::sort(cols.begin(), cols.end());
            std::vector<std::vector<Rational>> A;
            std::vector<Rational> b;
            for (const auto& e : eqs) {
                std::vector<Rational> row(cols.size(), Rational(0));
                for (std::size_t c = 0; c < cols.size(); ++c) row[c] = e.affine_coeff(cols[c]);
                A.push_back(std::move(row));
                b.push_back(-e.affine_constant());
            }
            try {
                const auto sol = solve_linear_exact(A, b);
                for (std::size_t c = 0; c < cols.size(); ++c) assign[cols[c]] = sol[c];
                continue;
            } catch (const InconsistentSystem&) {
                return;  // dead branch
            } catch (const SingularSystem&) {
                // underdetermined: fall through to the zero fill
            }
        }
        zero_fill_emit();
        return;
    }
}

// Numeric sign fix: far below the spectrum the diagonal behaves like
// 1 / (2 sqrt(-p)), so the sign of P sqrt(-p) / sqrt(Q) at a very negative p
// is the sign the closed form needs.  The magnitude doubles as a sanity
// check on the assembled degrees.
int closed_form_sign(const BiPoly& P, const UniPoly& Q, const PotentialSpec& spec) {
    const double p = -1e6;
    const double z = spec.map_id == MapId::none ? 0.0 : spec.map_z(0.37);
    const double Qv = eval_double(Q, p);
    if (Qv <= 0.0)
        throw AsymptoteFailure("Q is not positive far below the spectrum");
    const double ratio = eval_double(P, p, z) * std::sqrt(-p) / std::sqrt(Qv);
    if (std::fabs(std::fabs(ratio) - 1.0) > 1e-3)
        throw AsymptoteFailure("large-|p| behaviour is off by " +
                               std::to_string(std::fabs(ratio) - 1.0));
    return ratio > 0 ? +1 : -1;
}

}  // namespace

BiPoly build_residual(const BiPoly& P, const UniPoly& Q, const PotentialSpec& spec) {
    return residual_no_q<Rational>(P, spec) +
           BiPoly::from_p_poly(Q.scaled(Rational(4)));
}

std::variant<SolutionForm, SolveFailure> solve_for_degrees(const PotentialSpec& spec,
                                                           long M0, long N) {
    if (!spec.w.degree().has_value())
        throw InadmissibleInput("w(z) must be nonzero");
    const long K = spec.u.degree().value_or(0);
    if (K == 0)
        throw InadmissibleInput(
            "the degree sweep needs a non-constant u; constant potentials have "
            "their own closed form");
    if (M0 < 1 || N < 1) throw InadmissibleInput("M0 and N must be positive");
    if (N * K < M0)
        return SolveFailure{"p-degree too small: N deg(u) is below M0"};
    if (N > SymPoly::kMaxVars)
        return SolveFailure{"p-degree exceeds the symbolic slot budget"};

    // Ansatz: top slice normalised to 1; every lower slice starts as an
    // unknown z^0 coefficient, one symbol per slice.
    SymBi P;
    P.set_slice(static_cast<int>(N), SymUni({SymPoly(1L)}));
    for (long n = 0; n < N; ++n)
        P.set_slice(static_cast<int>(n), SymUni({SymPoly::var(static_cast<int>(n))}));

    // Downward sweep: residual slice p^(N+n+1) contains slice n only through
    // the term 8 P_n (from 4 p P^2), so its rows z^1.. hand over P_{n,l}
    // directly, still symbolic in the z^0 coefficients of higher slices.
    for (long n = N - 1; n >= 0; --n) {
        const SymBi R = residual_no_q<SymPoly>(P, spec);
        const SymUni& T = R.slice(static_cast<int>(N + n + 1));
        if (T.degree_or0() > (N - n) * K)
            return SolveFailure{"slice degree overflow during the sweep"};
        SymUni sl = P.slice(static_cast<int>(n));
        for (int l = 1; l <= T.degree_or0(); ++l)
            sl.set_coeff(l, T.coeff(l) * SymPoly(Rational(-1, 8)));
        P.set_slice(static_cast<int>(n), sl);
    }

    // Consistency rows of the p^N slice pin the z^0 coefficients; higher z
    // rows come first so each row tends to introduce one new symbol.
    const SymBi R = residual_no_q<SymPoly>(P, spec);
    const SymUni& SN = R.slice(static_cast<int>(N));
    std::vector<SymPoly> eqs;
    for (int l = SN.degree_or0(); l >= 1; --l)
        if (!(SN.coeff(l) == SymPoly())) eqs.push_back(SN.coeff(l));

    std::vector<std::map<int, Rational>> cands;
    resolve(std::move(eqs), {}, static_cast<int>(N), 0, cands);
    if (cands.empty())
        return SolveFailure{"no exact assignment satisfies the consistency rows"};

    for (const auto& assign : cands) {
        BiPoly Pr;
        for (long n = 0; n <= N; ++n) {
            const SymUni& sl = P.slice(static_cast<int>(n));
            std::vector<Rational> cs(static_cast<std::size_t>(sl.degree_or0()) + 1);
            for (int l = 0; l <= sl.degree_or0(); ++l)
                cs[static_cast<std::size_t>(l)] =
                    substitute_all(sl.coeff(l), assign).constant_value();
            Pr.set_slice(static_cast<int>(n), UniPoly(std::move(cs)));
        }

        // q_j read off the z^0 rows, then the one arbiter that matters:
        // the full residual must vanish identically.
        const BiPoly Rq = residual_no_q<Rational>(Pr, spec);
        std::vector<Rational> q(static_cast<std::size_t>(2 * N + 2));
        for (long j = 0; j <= 2 * N + 1; ++j)
            q[static_cast<std::size_t>(j)] =
                -Rq.coeff(static_cast<int>(j), 0) / Rational(4);
        UniPoly Q(std::move(q));
        if (!build_residual(Pr, Q, spec).is_zero()) continue;
        if (Q.degree() != std::optional<int>(static_cast<int>(2 * N + 1)) ||
            !(Q.leading() == Rational(-1)))
            continue;
        if (N >= 1 && Pr.slice(static_cast<int>(N - 1)).degree_or0() != K) continue;

        SolutionForm sol;
        sol.N = N;
        for (long n = 0; n <= N; ++n)
            sol.M.push_back(Pr.slice(static_cast<int>(n)).degree_or0());
        sol.P = std::move(Pr);
        sol.Q = std::move(Q);
        sol.sigma = closed_form_sign(sol.P, sol.Q, spec);
        sol.spec_hash = spec.hash();
        return sol;
    }
    return SolveFailure{"every candidate assignment leaves a nonzero exact residual"};
}

SolutionForm solve(const PotentialSpec& spec, const SolveOptions& opts) {
    const Classification cls = admissible(spec, opts.m0_max);

    if (cls.constant_potential) {
        SolutionForm sol;
        sol.N = 0;
        sol.M = {0};
        sol.P.set_slice(0, UniPoly({Rational(1)}));
        sol.Q = UniPoly({spec.u.coeff(0), Rational(-1)});
        sol.sigma = +1;
        sol.spec_hash = spec.hash();
        if (!build_residual(sol.P, sol.Q, spec).is_zero())
            throw DomainError("constant closed form failed its own residual");
        return sol;
    }

    std::ostringstream trace;
    for (long M0 : m0_candidates(cls.deg.L, cls.deg.uK_norm, opts.m0_max)) {
        const long lo = n_min(M0, cls.deg.K);
        const long hi = opts.n_max.value_or(lo + 3);
        for (long N = lo; N <= hi; ++N) {
            auto r = solve_for_degrees(spec, M0, N);
            if (auto* sol = std::get_if<SolutionForm>(&r)) return std::move(*sol);
            trace << "M0=" << M0 << " N=" << N << ": "
                  << std::get<SolveFailure>(r).reason << "; ";
        }
    }
    const std::string t = trace.str();
    throw NotFound("no closed form found: " +
                   (t.empty() ? std::string("no degree pair was admissible to try")
                              : t));
}

}  // namespace greendiag
