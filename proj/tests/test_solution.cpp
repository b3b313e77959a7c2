#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "greendiag/errors.hpp"
#include "greendiag/solution.hpp"

using namespace greendiag;

namespace {

SolutionForm sample() {
    SolutionForm sol;
    sol.N = 1;
    sol.M = {1, 0};
    sol.P.set_slice(0, UniPoly({Rational(0), Rational(-1, 2)}));
    sol.P.set_slice(1, UniPoly({Rational(1)}));
    sol.Q = UniPoly({Rational(0), Rational(1, 4), Rational(0), Rational(-1)});
    sol.sigma = -1;
    sol.spec_hash = "0123456789abcdef";
    return sol;
}

}  // namespace

TEST_CASE("canonical serialization layout") {
    CHECK(emit_solution(sample()) ==
          R"({"N":1,"M":[1,0],"P":[["0","-1/2"],["1"]],"Q":["0","1/4","0","-1"],"sigma":-1,"spec_hash":"0123456789abcdef"})");
}

TEST_CASE("round trip preserves every field") {
    auto sol = sample();
    auto back = parse_solution(emit_solution(sol));
    CHECK(back == sol);
    CHECK(back.N == 1);
    CHECK(back.M == std::vector<int>{1, 0});
    CHECK(back.sigma == -1);
    CHECK(back.P.coeff(0, 1) == Rational(-1, 2));
    CHECK(back.Q.coeff(3) == Rational(-1));
}

TEST_CASE("parsing is structural, not semantic") {
    // Inconsistent N / degrees / sigma must still load: downstream checks are
    // the ones responsible for rejecting them.
    auto doc =
        R"({"N":7,"M":[9],"P":[["2","3"]],"Q":["5"],"sigma":4,"spec_hash":""})";
    auto sol = parse_solution(doc);
    CHECK(sol.N == 7);
    CHECK(sol.sigma == 4);
    CHECK(sol.M == std::vector<int>{9});
    CHECK(sol.Q == UniPoly({Rational(5)}));
    // extra keys are ignored
    CHECK_NOTHROW(parse_solution(
        R"({"N":1,"M":[0],"P":[["1"]],"Q":["1"],"sigma":1,"spec_hash":"","note":"x"})"));
}

TEST_CASE("malformed solution documents") {
    CHECK_THROWS_AS(parse_solution("nonsense"), MalformedInput);
    CHECK_THROWS_AS(parse_solution("[]"), MalformedInput);
    CHECK_THROWS_AS(parse_solution(R"({"N":1,"M":[0],"P":[["1"]],"Q":["1"],"sigma":1})"),
                    MalformedInput);
    CHECK_THROWS_AS(
        parse_solution(
            R"({"N":"1","M":[0],"P":[["1"]],"Q":["1"],"sigma":1,"spec_hash":""})"),
        MalformedInput);
    CHECK_THROWS_AS(
        parse_solution(
            R"({"N":1,"M":[0],"P":[["1.5"]],"Q":["1"],"sigma":1,"spec_hash":""})"),
        MalformedInput);
    CHECK_THROWS_AS(
        parse_solution(
            R"({"N":1,"M":[0],"P":["1"],"Q":["1"],"sigma":1,"spec_hash":""})"),
        MalformedInput);
    CHECK_THROWS_AS(
        parse_solution(
            R"({"N":1,"M":[0.5],"P":[["1"]],"Q":["1"],"sigma":1,"spec_hash":""})"),
        MalformedInput);
}

TEST_CASE("latex rendering") {
    auto tex = latex_solution(sample());
    CHECK(tex.find("P(p,z) = p - \\frac{1}{2} z") != std::string::npos);
    CHECK(tex.find("Q(p) = -p^{3} + \\frac{1}{4} p") != std::string::npos);
    CHECK(tex.find("G(p,x) = -\\frac{P(p,z(x))}{2\\sqrt{Q(p)}}") != std::string::npos);

    SolutionForm three;
    three.N = 2;
    three.M = {2, 1, 0};
    three.P.set_slice(0, UniPoly({Rational(0), Rational(0), Rational(3, 4)}));
    three.P.set_slice(1, UniPoly({Rational(-5), Rational(2)}));
    three.P.set_slice(2, UniPoly({Rational(1)}));
    three.Q = UniPoly({Rational(0), Rational(0), Rational(0), Rational(0), Rational(0),
                       Rational(-1)});
    three.sigma = 1;
    auto t = latex_solution(three);
    CHECK(t.find("p^{2}") != std::string::npos);
    CHECK(t.find("\\left(-5 + 2 z\\right) p") != std::string::npos);
    CHECK(t.find("\\frac{3}{4} z^{2}") != std::string::npos);
    CHECK(t.find("G(p,x) = \\frac{") != std::string::npos);
}
