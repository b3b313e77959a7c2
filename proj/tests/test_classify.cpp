#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "greendiag/classify.hpp"
#include "greendiag/errors.hpp"

using namespace greendiag;

namespace {

PotentialSpec bare(UniPoly w, UniPoly u) {
    return PotentialSpec::make(MapId::none, {}, std::move(w), std::move(u));
}

}  // namespace

TEST_CASE("degrees of the preset families") {
    auto d1 = degrees(preset("cn2-gap-1"));
    CHECK(d1.K == 1);
    CHECK(d1.L == 2);
    CHECK(d1.a == Rational(-2));
    CHECK(d1.uK_norm == Rational(1, 2));

    CHECK(degrees(preset("cn2-gap-2")).uK_norm == Rational(3, 2));
    CHECK(degrees(preset("cn2-gap-3")).uK_norm == Rational(3));

    // uK_norm does not depend on the map parameters
    auto dg = degrees(preset("cn2-gap-3", {{"m", Rational(2)}, {"k2", Rational(1, 4)}}));
    CHECK(dg.a == Rational(-4));
    CHECK(dg.uK_norm == Rational(3));

    auto dc = degrees(preset("constant", {{"u0", Rational(7)}}));
    CHECK(dc.K == 0);
    CHECK(dc.L == -1);
}

TEST_CASE("gap count candidates") {
    CHECK(m0_candidates(2, Rational(1, 2)) == std::vector<long>{1});
    CHECK(m0_candidates(2, Rational(3, 2)) == std::vector<long>{2});
    CHECK(m0_candidates(2, Rational(3)) == std::vector<long>{3});
    // the opposite orientation convention lands on the same candidate
    CHECK(m0_candidates(2, Rational(-1, 2)) == std::vector<long>{1});
    CHECK(m0_candidates(2, Rational(-3)) == std::vector<long>{3});
    // non-square discriminant: no candidates
    CHECK(m0_candidates(2, Rational(5, 4)).empty());
    // integer root but above the cap
    CHECK(m0_candidates(2, Rational(903, 2), 12).empty());
    CHECK(m0_candidates(2, Rational(903, 2), 50) == std::vector<long>{42});
    // higher-degree profile: M^2 + 2M - 4 uK_norm with L = 3
    CHECK(m0_candidates(3, Rational(2)) == std::vector<long>{2});
}

TEST_CASE("minimal p-degree ladder") {
    CHECK(n_min(1, 1) == 1);
    CHECK(n_min(3, 1) == 3);
    CHECK(n_min(3, 2) == 2);
    CHECK(n_min(4, 2) == 2);
    CHECK(n_min(5, 2) == 3);
    CHECK_THROWS_AS(n_min(3, 0), DegenerateCase);
    CHECK_THROWS_AS(n_min(0, 1), DomainError);
}

TEST_CASE("admissibility of the presets") {
    for (long n : {1L, 2L, 3L}) {
        auto c = admissible(preset("cn2-gap-" + std::to_string(n)));
        CHECK(!c.constant_potential);
        CHECK(c.M0 == n);
        CHECK(c.N_min == n);
    }
    auto cc = admissible(preset("constant", {{"u0", Rational(5)}}));
    CHECK(cc.constant_potential);
    CHECK(cc.deg.K == 0);
}

TEST_CASE("sign-flipped amplitude still classifies") {
    // u = +6 z over the standard degree-3 profile: the candidate search must
    // succeed (M0 = 3); whether a closed form exists is for the solver.
    auto g3 = preset("cn2-gap-3");
    auto spec = bare(g3.w, UniPoly({Rational(0), Rational(6)}));
    auto c = admissible(spec);
    CHECK(c.M0 == 3);
    CHECK(c.N_min == 3);
}

TEST_CASE("inadmissible bundles raise with reasons") {
    // deg u too large for deg w
    CHECK_THROWS_AS(admissible(bare(UniPoly({Rational(0), Rational(0), Rational(1)}),
                                    UniPoly({Rational(0), Rational(0), Rational(3)}))),
                    Inadmissible);
    // w of degree < 2 with non-constant u
    CHECK_THROWS_AS(
        admissible(bare(UniPoly({Rational(5)}), UniPoly({Rational(0), Rational(1)}))),
        Inadmissible);
    CHECK_THROWS_AS(admissible(bare(UniPoly({Rational(0), Rational(1)}),
                                    UniPoly({Rational(0), Rational(1)}))),
                    Inadmissible);
    // degree law fine but no integer gap count
    CHECK_THROWS_AS(admissible(bare(UniPoly({Rational(0), Rational(0), Rational(0),
                                             Rational(-2)}),
                                    UniPoly({Rational(0), Rational(5)}))),
                    Inadmissible);
}

TEST_CASE("classification is invariant under rescaling z") {
    // z -> alpha z sends w_l -> alpha^(2-l) w_l and u_l -> alpha^(-l) u_l.
    auto base = preset("cn2-gap-2");
    auto d0 = degrees(base);
    for (Rational alpha : {Rational(2), Rational(-3), Rational(1, 2)}) {
        std::vector<Rational> wr, ur;
        Rational aw = alpha * alpha;  // alpha^(2-l) at l = 0
        for (long l = 0; l <= *base.w.degree(); ++l) {
            wr.push_back(aw * base.w.coeff(l));
            aw = aw / alpha;
        }
        Rational au(1);
        for (long l = 0; l <= *base.u.degree(); ++l) {
            ur.push_back(au * base.u.coeff(l));
            au = au / alpha;
        }
        auto scaled = bare(UniPoly(wr), UniPoly(ur));
        auto d = degrees(scaled);
        CHECK(d.K == d0.K);
        CHECK(d.L == d0.L);
        CHECK(d.uK_norm == d0.uK_norm);
        auto c = admissible(scaled);
        CHECK(c.M0 == 2);
        CHECK(c.N_min == 2);
    }
}
