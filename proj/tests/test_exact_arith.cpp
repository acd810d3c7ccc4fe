#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "az/expr.hpp"
#include "az/linsolve.hpp"

#include <random>

using namespace az;

namespace {

const std::set<std::string> kVars{"x", "n", "r"};

RatFunc rf(const std::string& text) { return parse_ratfunc(text, kVars); }

MultiPoly poly(const std::string& text) {
    RatFunc f = rf(text);
    REQUIRE(f.den().is_one());
    return f.num();
}

// Random small polynomials / rational functions with a fixed seed.
struct Rng {
    std::mt19937 gen{12345};

    Rational coeff() {
        std::uniform_int_distribution<int> d(-4, 4);
        return Rational(d(gen));
    }

    MultiPoly polynomial(const std::vector<std::string>& vars, int max_deg) {
        MultiPoly p;
        std::uniform_int_distribution<int> dd(0, max_deg);
        for (const auto& v : vars) {
            MultiPoly x = MultiPoly::variable(v);
            int deg = dd(gen);
            for (int e = 0; e <= deg; ++e) p += x.pow(static_cast<unsigned>(e)) * coeff();
        }
        return p;
    }

    MultiPoly nonzero_polynomial(const std::vector<std::string>& vars, int max_deg) {
        for (int tries = 0; tries < 100; ++tries) {
            MultiPoly p = polynomial(vars, max_deg);
            if (!p.is_zero()) return p;
        }
        return MultiPoly::constant(1);
    }

    RatFunc ratfunc(const std::vector<std::string>& vars, int max_deg) {
        return RatFunc(nonzero_polynomial(vars, max_deg), nonzero_polynomial(vars, max_deg));
    }

    Rational point() {
        std::uniform_int_distribution<int> dn(-12, 12);
        std::uniform_int_distribution<int> dq(1, 7);
        return Rational(dn(gen), dq(gen));
    }
};

}  // namespace

TEST_CASE("integer and rational basics") {
    Integer big = factorial(30);
    CHECK(big.str() == "265252859812191058636308480000000");
    CHECK(binomial(40, 20).str() == "137846528820");
    CHECK(Integer(0) == -Integer(0));
    CHECK(rational_gcd(Rational(6), Rational(4)) == 2);
    CHECK(rational_gcd(Rational(1, 2), Rational(3)) == Rational(1, 2));
    Rational q(-6, 4);
    CHECK(num(q) == -3);
    CHECK(den(q) == 2);
    CHECK(decimal_string(Rational(11, 30), 6) == "0.366666");
    CHECK(decimal_string(Rational(-1, 4), 3) == "-0.250");
}

TEST_CASE("normalize reduces and fixes signs") {
    CHECK(rf("(x^2 - 1)/(x - 1)") == rf("x + 1"));
    CHECK(rf("0/(x + 5)").is_zero());
    CHECK(rf("0/(x + 5)").den().is_one());
    CHECK(rf("(2*n + 2)/(4*n + 4)") == RatFunc::constant(Rational(1, 2)));
    // denominator sign: leading coefficient positive
    RatFunc f = rf("x/(1 - n)");
    CHECK(f.den() == poly("n - 1"));
    CHECK(f.num() == poly("-x"));
    CHECK_THROWS_AS(RatFunc(poly("x"), MultiPoly()), ZeroDenominator);
}

TEST_CASE("gcd examples") {
    CHECK(MultiPoly::gcd(poly("x^2 - 1"), poly("x^2 - 2*x + 1")) == poly("x - 1"));
    CHECK(MultiPoly::gcd(poly("6"), poly("4")) == poly("2"));
    CHECK(MultiPoly::gcd(poly("x*(1 - x)"), poly("1 - 2*x")) == poly("1"));
    CHECK(MultiPoly::gcd(poly("0"), poly("2*x + 2")) == poly("2*x + 2"));
    CHECK_THROWS_AS(MultiPoly::gcd(MultiPoly(), MultiPoly()), MathError);
    // multivariate
    CHECK(MultiPoly::gcd(poly("n*x + n"), poly("x^2 + 2*x + 1")) == poly("x + 1"));
    CHECK(MultiPoly::gcd(poly("2*n + 2"), poly("4*n + 4")) == poly("2*n + 2"));
}

TEST_CASE("derivative examples") {
    CHECK(rf("1/x").derivative("x") == rf("-1/x^2"));
    CHECK(rf("-x").derivative("x") == rf("-1"));
    CHECK(rf("(1 - 2*x)*(x*(1 - x))").derivative("x") == rf("6*x^2 - 6*x + 1"));
    CHECK(rf("x^2").derivative("n").is_zero());
    CHECK_THROWS_AS(rf("x^2").derivative("x").evaluate({}), MathError);
}

TEST_CASE("shift examples") {
    CHECK(rf("n/(n + 1)").shifted("n", 1) == rf("(n + 1)/(n + 2)"));
    CHECK(rf("x^2").shifted("n", 3) == rf("x^2"));
    CHECK(rf("x^2/(x^2 + 1)").shifted("n", 1) == rf("x^2/(x^2 + 1)"));
}

TEST_CASE("solve_linear examples") {
    auto c = [](const std::string& s) { return rf(s); };

    SUBCASE("unique solution") {
        LinearSolution sol = solve_linear({{c("1"), c("1")}, {c("1"), c("-1")}},
                                          {c("2*n"), c("2")});
        REQUIRE(sol.consistent);
        CHECK(sol.nullspace.empty());
        CHECK(sol.particular[0] == c("n + 1"));
        CHECK(sol.particular[1] == c("n - 1"));
    }
    SUBCASE("underdetermined") {
        LinearSolution sol = solve_linear({{c("1"), c("1")}}, {c("0")});
        REQUIRE(sol.consistent);
        CHECK(sol.particular[0].is_zero());
        CHECK(sol.particular[1].is_zero());
        REQUIRE(sol.nullspace.size() == 1);
        CHECK(sol.nullspace[0][0] == c("1"));
        CHECK(sol.nullspace[0][1] == c("-1"));
    }
    SUBCASE("inconsistent") {
        LinearSolution sol = solve_linear({{c("n"), c("0")}, {c("0"), c("0")}},
                                          {c("n^2"), c("1")});
        CHECK_FALSE(sol.consistent);
    }
}

TEST_CASE("field axioms at random rational points") {
    Rng rng;
    for (int iter = 0; iter < 40; ++iter) {
        RatFunc f = rng.ratfunc({"x", "n"}, 2);
        RatFunc g = rng.ratfunc({"x", "n"}, 2);
        std::map<std::string, Rational> pt;
        bool ok = false;
        for (int tries = 0; tries < 50 && !ok; ++tries) {
            pt = {{"x", rng.point()}, {"n", rng.point()}};
            ok = f.den().evaluate(pt) != 0 && g.den().evaluate(pt) != 0;
        }
        if (!ok) continue;
        Rational fv = f.evaluate(pt), gv = g.evaluate(pt);
        CHECK((f + g).evaluate(pt) == fv + gv);
        CHECK((f - g).evaluate(pt) == fv - gv);
        CHECK((f * g).evaluate(pt) == fv * gv);
        if (gv != 0 && !g.is_zero()) {
            RatFunc q = f / g;
            if (q.den().evaluate(pt) != 0) CHECK(q.evaluate(pt) == fv / gv);
        }
    }
}

TEST_CASE("gcd divides both operands exactly") {
    Rng rng;
    for (int iter = 0; iter < 30; ++iter) {
        MultiPoly p = rng.polynomial({"x", "n"}, 2);
        MultiPoly q = rng.polynomial({"x", "n"}, 2);
        if (p.is_zero() && q.is_zero()) continue;
        // seed a common factor half the time
        if (iter % 2 == 0) {
            MultiPoly common = rng.nonzero_polynomial({"x"}, 1);
            p *= common;
            q *= common;
        }
        MultiPoly g = MultiPoly::gcd(p, q);
        if (!p.is_zero()) CHECK(p.divide_exact(g).has_value());
        if (!q.is_zero()) CHECK(q.divide_exact(g).has_value());
    }
}

TEST_CASE("derivative satisfies the product rule") {
    Rng rng;
    for (int iter = 0; iter < 25; ++iter) {
        RatFunc f = rng.ratfunc({"x", "n"}, 2);
        RatFunc g = rng.ratfunc({"x", "n"}, 2);
        RatFunc lhs = (f * g).derivative("x");
        RatFunc rhs = f.derivative("x") * g + f * g.derivative("x");
        CHECK(lhs == rhs);
    }
}

TEST_CASE("shift by 1 then by -1 is the identity") {
    Rng rng;
    for (int iter = 0; iter < 25; ++iter) {
        RatFunc f = rng.ratfunc({"x", "n"}, 3);
        CHECK(f.shifted("n", 1).shifted("n", -1) == f);
    }
}

TEST_CASE("solve_linear solutions reproduce the right-hand side") {
    Rng rng;
    for (int iter = 0; iter < 15; ++iter) {
        std::uniform_int_distribution<int> dim(1, 4);
        int rows = dim(rng.gen), cols = dim(rng.gen);
        std::vector<std::vector<RatFunc>> m(static_cast<size_t>(rows));
        for (auto& row : m) {
            for (int j = 0; j < cols; ++j)
                row.push_back(RatFunc(rng.polynomial({"n"}, 1)));
        }
        std::vector<RatFunc> rhs;
        for (int i = 0; i < rows; ++i) rhs.push_back(RatFunc(rng.polynomial({"n"}, 1)));

        LinearSolution sol = solve_linear(m, rhs);
        if (!sol.consistent) continue;
        for (int i = 0; i < rows; ++i) {
            RatFunc acc;
            for (int j = 0; j < cols; ++j)
                acc += m[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                       sol.particular[static_cast<size_t>(j)];
            CHECK(acc == rhs[static_cast<size_t>(i)]);
        }
        for (const auto& basis : sol.nullspace) {
            for (int i = 0; i < rows; ++i) {
                RatFunc acc;
                for (int j = 0; j < cols; ++j)
                    acc += m[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                           basis[static_cast<size_t>(j)];
                CHECK(acc.is_zero());
            }
        }
    }
}

TEST_CASE("canonical printing is ascending graded-lex and round-trips") {
    CHECK(poly("n + 1").to_string() == "1 + n");
    CHECK(poly("-2*n - 1").to_string() == "-1 - 2*n");
    CHECK(rf("(x^2 - 1)/(x - 1)").to_string() == "1 + x");
    CHECK(rf("n/(n + 1)").to_string() == "n/(1 + n)");
    CHECK(rf("1/x^2").to_string() == "1/x^2");
    CHECK(rf("x/(2*n)").to_string() == "1/2*x/n");

    Rng rng;
    for (int iter = 0; iter < 30; ++iter) {
        RatFunc f = rng.ratfunc({"x", "n", "r"}, 2);
        CHECK(rf(f.to_string()) == f);
    }
}
