#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "az/recurrence.hpp"

#include <random>

using namespace az;

namespace {

RatFunc ratio_rf(const std::string& text) { return parse_ratfunc(text, {"n", "r"}); }

ExactNumber ex(const std::string& text) { return ExactNumber::parse(text); }

const char* kEulerOp = "N^2 + 2*(2*n + 3)*(n + 2)*N - (n + 1)*(n + 2)";

}  // namespace

TEST_CASE("exact numbers parse, print and combine") {
    ExactNumber v = ex("-1 + 3*inv_e");
    CHECK(v.rational_part() == -1);
    CHECK(v.const_coeff() == 3);
    CHECK(v.tag() == ConstTag::InvE);
    CHECK(v.to_string() == "-1 + 3*inv_e");
    CHECK(ExactNumber::parse(v.to_string()) == v);
    CHECK(ex("14 - 38*inv_e").to_string() == "14 - 38*inv_e");
    CHECK(ex("(1 + inv_e)/2").rational_part() == Rational(1, 2));
    CHECK(ex("5/3").is_rational());
    CHECK((ex("1 + inv_e") + ex("2 - inv_e")).is_rational());
    CHECK_THROWS_AS(ex("inv_e + pi"), MixedConstantTags);
    CHECK_THROWS_AS(ex("inv_e") + ex("pi"), MixedConstantTags);
    CHECK_THROWS_AS(ex("inv_e^2"), MathError);
    // numeric view
    Real einv = Real(1) / boost::multiprecision::exp(Real(1));
    CHECK(boost::multiprecision::fabs(ex("-1 + 3*inv_e").numeric(einv) -
                                      (-1 + 3 * einv)) < Real("1e-45"));
}

TEST_CASE("unroll: Fibonacci") {
    RecOperator fib = RecOperator::parse("N^2 - N - 1");
    SequenceTable t = unroll(fib, {ExactNumber(Rational(1)), ExactNumber(Rational(1))}, 1, 8);
    std::vector<int> expect{1, 1, 2, 3, 5, 8, 13, 21};
    REQUIRE(t.values.size() == 8);
    for (size_t i = 0; i < expect.size(); ++i)
        CHECK(t.values[i].rational_part() == expect[i]);
    CHECK(t.check());
}

TEST_CASE("unroll: factorials up to 20 are exact") {
    RecOperator op = RecOperator::parse("N - (n + 1)");
    SequenceTable t = unroll(op, {ExactNumber(Rational(1))}, 0, 21);
    for (int n = 0; n <= 20; ++n)
        CHECK(t.values[static_cast<size_t>(n)].rational_part() ==
              Rational(factorial(static_cast<unsigned>(n))));
    CHECK(t.values[20].rational_part() == rational_from_string("2432902008176640000"));
    CHECK(t.check());
}

TEST_CASE("unroll: the euler sequence in Q + Q*e^-1") {
    RecOperator op = RecOperator::parse(kEulerOp);
    SequenceTable t = unroll(op, {ex("-1 + 3*inv_e"), ex("14 - 38*inv_e")}, 1, 4);
    REQUIRE(t.values.size() == 4);
    CHECK(t.values[2] == ex("-426 + 1158*inv_e"));
    CHECK(t.values[3] == ex("24024 - 65304*inv_e"));
    CHECK(t.check());
}

TEST_CASE("unroll: central binomial table from 1/6") {
    RecOperator op = RecOperator::parse("n + 1 + (-4*n - 6)*N");
    SequenceTable t = unroll(op, {ex("1/6")}, 1, 7);
    std::vector<std::string> expect{"1/6", "1/30", "1/140", "1/630", "1/2772", "1/12012",
                                    "1/51480"};
    REQUIRE(t.values.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i)
        CHECK(t.values[i].rational_part() == rational_from_string(expect[i]));
}

TEST_CASE("unroll error paths") {
    CHECK_THROWS_AS(unroll(RecOperator::parse("(n - 2)*N - 1"), {ex("1")}, 0, 6),
                    SingularLeadingCoefficient);
    try {
        unroll(RecOperator::parse("(n - 2)*N - 1"), {ex("1")}, 0, 6);
    } catch (const SingularLeadingCoefficient& e) {
        CHECK(e.index == 2);
    }
    CHECK_THROWS_AS(unroll(RecOperator::parse("N^2 - N - 1"), {ex("inv_e"), ex("pi")}, 0, 5),
                    MixedConstantTags);
    CHECK_THROWS_AS(unroll(RecOperator::parse("N - n"), {ex("1"), ex("2")}, 0, 5), MathError);
    CHECK_THROWS_AS(
        unroll(RecOperator::parse("N - (n + r)", "n", {"r"}), {ex("1")}, 0, 5), MathError);
}

TEST_CASE("check_solution on the classical closed forms") {
    // pi 4^-n C(2n, n)
    CHECK(check_solution(RecOperator::parse("(2*n + 2)*N - (2*n + 1)"),
                         ratio_rf("(2*n + 1)/(2*(n + 1))")));
    // n!
    CHECK(check_solution(RecOperator::parse("N - (n + 1)"), ratio_rf("n + 1")));
    // 1/(r C(r+n, n))
    CHECK(check_solution(RecOperator::parse("(n + 1) + (-n - r - 1)*N", "n", {"r"}),
                         ratio_rf("(n + 1)/(n + r + 1)")));
    // 1/((2n+1) C(2n, n))
    CHECK(check_solution(RecOperator::parse("n + 1 + (-4*n - 6)*N"),
                         ratio_rf("(n + 1)/(2*(2*n + 3))")));
    // perturbed control
    CHECK_FALSE(check_solution(RecOperator::parse("N - (n + 1)"), ratio_rf("n + 2")));
}

TEST_CASE("check_solution consistency with unroll") {
    struct Family {
        std::string op;
        std::string ratio;
    };
    std::vector<Family> families = {
        {"(2*n + 2)*N - (2*n + 1)", "(2*n + 1)/(2*(n + 1))"},
        {"N - (n + 1)", "n + 1"},
        {"n + 1 + (-4*n - 6)*N", "(n + 1)/(2*(2*n + 3))"},
    };
    std::mt19937 gen(5);
    std::uniform_int_distribution<int> dn(1, 9), dd(1, 9);
    for (const auto& fam : families) {
        RecOperator op = RecOperator::parse(fam.op);
        RatFunc ratio = ratio_rf(fam.ratio);
        REQUIRE(check_solution(op, ratio));
        Rational c(dn(gen), dd(gen));
        SequenceTable t = unroll(op, {ExactNumber(c)}, 0, 20);
        Rational expected = c;
        for (int n = 0; n < 20; ++n) {
            CHECK(t.values[static_cast<size_t>(n)].rational_part() == expected);
            expected *= ratio.evaluate({{"n", Rational(n)}});
        }
    }
    // parameterized family at r = 3, random start value
    RecOperator op = RecOperator::parse("(n + 1) + (-n - r - 1)*N", "n", {"r"}).substituted(
        "r", 3);
    Rational c3(dn(gen), dd(gen));
    SequenceTable t = unroll(op, {ExactNumber(c3)}, 0, 20);
    Rational expected = c3;
    for (int n = 0; n < 20; ++n) {
        CHECK(t.values[static_cast<size_t>(n)].rational_part() == expected);
        expected *= Rational(n + 1) / Rational(n + 4);
    }
}

TEST_CASE("binomial sum identity") {
    auto [l0, r0] = binomial_sum_identity(0);
    CHECK(l0 == 1);
    CHECK(r0 == 1);
    auto [l1, r1] = binomial_sum_identity(1);
    CHECK(l1 == Rational(1, 6));
    CHECK(r1 == Rational(1, 6));
    auto [l2, r2] = binomial_sum_identity(2);
    CHECK(l2 == Rational(1, 30));
    for (long n = 0; n <= 50; ++n) {
        auto [lhs, rhs] = binomial_sum_identity(n);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("sequence tables serialize through the exact-number text form") {
    RecOperator op = RecOperator::parse(kEulerOp);
    SequenceTable t = unroll(op, {ex("-1 + 3*inv_e"), ex("14 - 38*inv_e")}, 1, 6);
    for (const auto& v : t.values) CHECK(ExactNumber::parse(v.to_string()) == v);
}
