#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <variant>

#include "greendiag/classify.hpp"
#include "greendiag/errors.hpp"
#include "greendiag/linsolve.hpp"
#include "greendiag/solver.hpp"
#include "reference_forms.hpp"

using namespace greendiag;

namespace {

SolutionForm expect_solution(std::variant<SolutionForm, SolveFailure> r) {
    if (auto* f = std::get_if<SolveFailure>(&r))
        FAIL("expected a solution, got failure: ", f->reason);
    return std::get<SolutionForm>(r);
}

std::string expect_failure(std::variant<SolutionForm, SolveFailure> r) {
    REQUIRE(std::holds_alternative<SolveFailure>(r));
    return std::get<SolveFailure>(r).reason;
}

Rational rand_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    return Rational(num(rng), den(rng));
}

}  // namespace

// ---------------------------------------------------------------------------
// The residual itself, before any solving: it is the arbiter everything else
// leans on, so it gets checked first, including against an independent
// pointwise evaluation of the same identity.

TEST_CASE("residual vanishes identically on the hand-derived one-gap form") {
    auto spec = preset("cn2-gap-1");
    CHECK(build_residual(refforms::one_gap_P(Rational(1), Rational(1, 2)),
                         refforms::one_gap_Q(Rational(1), Rational(1, 2)), spec)
              .is_zero());
    auto spec4 = preset("cn2-gap-1", {{"k2", Rational(1, 4)}});
    CHECK(build_residual(refforms::one_gap_P(Rational(1), Rational(1, 4)),
                         refforms::one_gap_Q(Rational(1), Rational(1, 4)), spec4)
              .is_zero());
    // and on a non-unit mass
    auto spec_m = preset("cn2-gap-1", {{"m", Rational(3)}, {"k2", Rational(2, 5)}});
    CHECK(build_residual(refforms::one_gap_P(Rational(9), Rational(2, 5)),
                         refforms::one_gap_Q(Rational(9), Rational(2, 5)), spec_m)
              .is_zero());
}

TEST_CASE("residual vanishes identically on the hand-derived three-gap form") {
    for (Rational kk : {Rational(1, 2), Rational(1, 4)}) {
        auto spec = preset("cn2-gap-3", {{"k2", kk}});
        CHECK(build_residual(refforms::three_gap_P(Rational(1), kk),
                             refforms::three_gap_Q(Rational(1), kk), spec)
                  .is_zero());
    }
}

TEST_CASE("residual on the constant closed form") {
    auto spec = preset("constant", {{"u0", Rational(5)}});
    BiPoly P;
    P.set_slice(0, UniPoly({Rational(1)}));
    UniPoly Q({Rational(5), Rational(-1)});
    CHECK(build_residual(P, Q, spec).is_zero());
}

TEST_CASE("residual agrees with a pointwise evaluation of the identity") {
    // Same identity, assembled per-point from independent evaluations instead
    // of polynomial arithmetic; exercises the bivariate product/derivative
    // plumbing on inputs that are NOT solutions.
    std::mt19937 rng(20240817);
    auto spec = preset("cn2-gap-2");
    for (int trial = 0; trial < 8; ++trial) {
        BiPoly P;
        for (int n = 0; n <= 2; ++n) {
            std::vector<Rational> cs;
            for (int l = 0; l <= 2; ++l) cs.push_back(rand_rational(rng));
            P.set_slice(n, UniPoly(cs));
        }
        UniPoly Q({rand_rational(rng), rand_rational(rng), rand_rational(rng)});
        BiPoly R = build_residual(P, Q, spec);
        for (int pt = 0; pt < 4; ++pt) {
            const Rational p = rand_rational(rng), z = rand_rational(rng);
            const Rational Pv = P.eval(p, z);
            const Rational Pzv = P.dz().eval(p, z);
            const Rational Pzzv = P.dz().dz().eval(p, z);
            const Rational wv = spec.w.eval(z);
            const Rational wpv = spec.w.derivative().eval(z);
            const Rational uv = spec.u.eval(z);
            const Rational expected =
                Rational(2) * Pv * (Pzzv * wv + Pzv * wpv / Rational(2)) -
                Pzv * Pzv * wv - Rational(4) * (uv - p) * Pv * Pv +
                Rational(4) * Q.eval(p);
            CHECK(R.eval(p, z) == expected);
        }
    }
}

TEST_CASE("any single-coefficient corruption breaks the exact residual") {
    auto spec = preset("cn2-gap-1");
    const BiPoly P0 = refforms::one_gap_P(Rational(1), Rational(1, 2));
    const UniPoly Q0 = refforms::one_gap_Q(Rational(1), Rational(1, 2));
    REQUIRE(build_residual(P0, Q0, spec).is_zero());
    for (int n = 0; n <= 1; ++n)
        for (int l = 0; l <= 1; ++l) {
            BiPoly P = P0;
            UniPoly sl = P.slice(n);
            sl.set_coeff(l, sl.coeff(l) + Rational(1));
            P.set_slice(n, sl);
            CHECK(!build_residual(P, Q0, spec).is_zero());
        }
    for (int j = 0; j <= 3; ++j) {
        UniPoly Q = Q0;
        Q.set_coeff(j, Q.coeff(j) + Rational(1));
        CHECK(!build_residual(P0, Q, spec).is_zero());
    }
}

// ---------------------------------------------------------------------------
// Fixed-degree solving.

TEST_CASE("one-gap form is found exactly at the minimal degrees") {
    auto sol = expect_solution(solve_for_degrees(preset("cn2-gap-1"), 1, 1));
    CHECK(sol.N == 1);
    CHECK(sol.M == std::vector<int>{1, 0});
    CHECK(sol.P == refforms::one_gap_P(Rational(1), Rational(1, 2)));
    CHECK(sol.Q == refforms::one_gap_Q(Rational(1), Rational(1, 2)));
    CHECK(sol.Q == UniPoly({Rational(0), Rational(1, 4), Rational(0), Rational(-1)}));
    CHECK(sol.sigma == -1);
}

TEST_CASE("one-gap form across parameter values") {
    for (auto [m, kk] : {std::pair{Rational(1), Rational(1, 4)},
                         std::pair{Rational(2), Rational(1, 3)},
                         std::pair{Rational(1, 2), Rational(3, 4)},
                         std::pair{Rational(3), Rational(1, 5)}}) {
        auto spec = preset("cn2-gap-1", {{"m", m}, {"k2", kk}});
        auto sol = expect_solution(solve_for_degrees(spec, 1, 1));
        const Rational mu = m * m;
        CHECK(sol.P == refforms::one_gap_P(mu, kk));
        CHECK(sol.Q == refforms::one_gap_Q(mu, kk));
    }
}

TEST_CASE("three-gap form is found exactly and matches the reference") {
    for (Rational kk : {Rational(1, 2), Rational(1, 4)}) {
        auto spec = preset("cn2-gap-3", {{"k2", kk}});
        auto sol = expect_solution(solve_for_degrees(spec, 3, 3));
        CHECK(sol.N == 3);
        CHECK(sol.M == std::vector<int>{3, 2, 1, 0});
        CHECK(sol.P == refforms::three_gap_P(Rational(1), kk));
        CHECK(sol.Q == refforms::three_gap_Q(Rational(1), kk));
        CHECK(sol.sigma == -1);
    }
    // spot value at the default modulus: Q = -p(p^2-15)(p^2-3p-15/4)(p^2+3p-15/4)
    auto sol = expect_solution(solve_for_degrees(preset("cn2-gap-3"), 3, 3));
    CHECK(sol.Q == UniPoly({Rational(0), Rational(3375, 16), Rational(0),
                            Rational(-4185, 16), Rational(0), Rational(63, 2),
                            Rational(0), Rational(-1)}));
}

TEST_CASE("a p-degree below the ladder minimum is a clean failure") {
    auto reason = expect_failure(solve_for_degrees(preset("cn2-gap-3"), 3, 2));
    CHECK(reason.find("too small") != std::string::npos);
}

TEST_CASE("junk degree requests are input errors, not failures") {
    CHECK_THROWS_AS(solve_for_degrees(preset("cn2-gap-1"), 0, 1), InadmissibleInput);
    CHECK_THROWS_AS(solve_for_degrees(preset("cn2-gap-1"), 1, 0), InadmissibleInput);
    CHECK_THROWS_AS(solve_for_degrees(preset("constant"), 1, 1), InadmissibleInput);
}

// ---------------------------------------------------------------------------
// The full pipeline.

TEST_CASE("constant potentials take the closed-form path") {
    auto sol = solve(preset("constant", {{"u0", Rational(5)}}));
    CHECK(sol.N == 0);
    CHECK(sol.M == std::vector<int>{0});
    CHECK(sol.P.coeff(0, 0) == Rational(1));
    CHECK(sol.Q == UniPoly({Rational(5), Rational(-1)}));
    CHECK(sol.sigma == +1);
    auto zero = solve(preset("constant"));
    CHECK(zero.Q == UniPoly({Rational(0), Rational(-1)}));
}

TEST_CASE("solve lands on the minimal degrees for every elliptic preset") {
    for (long n : {1L, 2L, 3L}) {
        auto spec = preset("cn2-gap-" + std::to_string(n));
        auto sol = solve(spec);
        CHECK(sol.N == n);
        REQUIRE(sol.M.size() == static_cast<std::size_t>(n) + 1);
        for (long i = 0; i <= n; ++i) CHECK(sol.M[static_cast<std::size_t>(i)] == n - i);
        CHECK(sol.Q.degree() == std::optional<int>(static_cast<int>(2 * n + 1)));
        CHECK(sol.Q.leading() == Rational(-1));
        CHECK(sol.sigma == (n % 2 == 0 ? +1 : -1));
        CHECK(sol.spec_hash == spec.hash());
        CHECK(build_residual(sol.P, sol.Q, spec).is_zero());
    }
}

TEST_CASE("solve is deterministic") {
    auto a = emit_solution(solve(preset("cn2-gap-2")));
    auto b = emit_solution(solve(preset("cn2-gap-2")));
    CHECK(a == b);
}

TEST_CASE("sign-flipped amplitude has no closed form: NotFound with a trace") {
    auto g3 = preset("cn2-gap-3");
    auto spec = PotentialSpec::make(MapId::cn2, g3.params, g3.w,
                                    UniPoly({Rational(0), Rational(6)}));
    SolveOptions opts;
    opts.n_max = 4;
    try {
        solve(spec, opts);
        FAIL("expected NotFound");
    } catch (const NotFound& e) {
        const std::string msg = e.what();
        CHECK(msg.find("M0=3 N=3") != std::string::npos);
        CHECK(msg.find("M0=3 N=4") != std::string::npos);
    }
}

TEST_CASE("inadmissible bundles are rejected before any sweep") {
    auto spec = PotentialSpec::make(MapId::none, {}, UniPoly({Rational(0), Rational(1)}),
                                    UniPoly({Rational(0), Rational(1)}));
    CHECK_THROWS_AS(solve(spec), Inadmissible);
}

TEST_CASE("emitted solved forms round-trip") {
    auto sol = solve(preset("cn2-gap-3"));
    auto back = parse_solution(emit_solution(sol));
    CHECK(back == sol);
}

// ---------------------------------------------------------------------------
// Why N is searched from the minimum upward: at a constant potential the
// p-degree-1 ansatz admits a whole family of valid forms, one per choice of
// the middle coefficient of Q, so nothing pins the inflated degrees.

TEST_CASE("constant potential carries a one-parameter family at N = 1") {
    auto spec = preset("constant", {{"u0", Rational(5)}});
    for (Rational q2 : {Rational(0), Rational(1)}) {
        const Rational c = (Rational(5) - q2) / Rational(2);
        BiPoly P;
        P.set_slice(0, UniPoly({c}));
        P.set_slice(1, UniPoly({Rational(1)}));
        // Q = (u0 - p)(c + p)^2 with leading coefficient -1
        UniPoly Q({c * c * Rational(5), Rational(2) * c * Rational(5) - c * c, q2,
                   Rational(-1)});
        CHECK(build_residual(P, Q, spec).is_zero());
    }
    // The two rows that would have to pin (P00, q2, q3) do not: the linear
    // system they form is rank-deficient.
    std::vector<std::vector<Rational>> A = {
        {Rational(0), Rational(0), Rational(4)},
        {Rational(8), Rational(4), Rational(0)}};
    std::vector<Rational> b = {Rational(-4), Rational(20)};
    CHECK_THROWS_AS(solve_linear_exact(A, b), SingularSystem);
}
