#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "az/irrationality.hpp"
#include "az/quadrature.hpp"
#include "az/recurrence.hpp"

using namespace az;
namespace bmp = boost::multiprecision;

namespace {

const char* kEulerOp = "N^2 + 2*(2*n + 3)*(n + 2)*N - (n + 1)*(n + 2)";

RecOperator euler_op() { return RecOperator::parse(kEulerOp); }

}  // namespace

TEST_CASE("constant_inv_e: certified alternating series") {
    CHECK(inv_e_partial_sum(5) == Rational(11, 30));

    CertifiedRational c3 = constant_inv_e(3);
    CHECK(c3.error_bound <= Rational(1, 1000));
    CHECK(abs(c3.value - Rational(3678, 10000)) < Rational(2, 1000));

    // one digit: anything within 0.1 of the true value
    CertifiedRational c1 = constant_inv_e(1);
    CHECK(c1.error_bound <= Rational(1, 10));
    CHECK(abs(c1.value - Rational(36788, 100000)) < Rational(1, 10));

    // 39-digit reference value
    CertifiedRational c40 = constant_inv_e(40);
    CHECK(decimal_string(c40.value, 39) == "0.367879441171442321595523770161460867445");
    CHECK(c40.error_bound <= az::pow(Rational(1, 10), 40));

    CHECK_THROWS_AS(constant_inv_e(0), MathError);
}

TEST_CASE("integer_pair_sequence reproduces the known integer pairs") {
    IntegerPair seq = integer_pair_sequence(euler_op(), {-1, 14}, {3, -38}, 1, 4);
    REQUIRE(seq.a.size() == 4);
    CHECK(seq.a[2] == -426);
    CHECK(seq.a[3] == 24024);
    CHECK(seq.b[2] == 1158);
    CHECK(seq.b[3] == -65304);

    IntegerPair facts = integer_pair_sequence(RecOperator::parse("N - (n + 1)"), {1}, {1}, 0, 5);
    CHECK(facts.a == std::vector<Integer>{1, 1, 2, 6, 24});
}

TEST_CASE("integer_pair_sequence error paths") {
    CHECK_THROWS_AS(integer_pair_sequence(RecOperator::parse("2*N - 1"), {1}, {1}, 0, 4),
                    NonIntegralStep);
    CHECK_THROWS_AS(
        integer_pair_sequence(RecOperator::parse("(n - 1)*N - n"), {1}, {1}, 0, 4),
        SingularLeadingCoefficient);
}

TEST_CASE("approximation report: reference checkpoints") {
    std::vector<ApproxRecord> records = approximation_report(euler_op(), {-1, 14}, {3, -38}, 1,
                                                             20, 80);
    REQUIRE(records.size() == 20);

    SUBCASE("n = 4 fraction") {
        const ApproxRecord& r = records[3];
        CHECK(r.a == 24024);
        CHECK(r.b == -65304);
        CHECK(r.g == 24);
        CHECK(r.p == 1001);
        CHECK(r.q == 2721);
        CHECK(decimal_string(Rational(r.p, r.q), 8) == "0.36787945");
    }
    SUBCASE("n = 20 digit-for-digit") {
        const ApproxRecord& r = records[19];
        CHECK(r.a.str() == "493294164866383351699429534601141833239920640000");
        CHECK(Integer(-r.b).str() == "1340912564441170249019237618446466016434749440000");
        // |-a20/b20 - e^-1| < 10^-37, certified: the residual |a + b e^-1|
        // is known to within |b| * eps with eps <= 10^-80
        CertifiedRational einv = constant_inv_e(80);
        Rational diff_hi =
            (abs(r.residual) + r.residual_err) / Rational(abs(r.b));
        CHECK(diff_hi < az::pow(Rational(1, 10), 37));
    }
    SUBCASE("decay bound holds for all computed indices") {
        for (const auto& r : records) CHECK(r.decay_ok);
    }
    SUBCASE("residuals match integral values from quadrature for n <= 8") {
        HyperTerm h = HyperTerm::parse("(x*(1-x))^n * exp(-x)");
        for (int n = 1; n <= 8; ++n) {
            QuadResult quad = integrate(h, n, Interval::finite(0, 1), {}, {});
            Real residual = to_real(records[static_cast<size_t>(n - 1)].residual);
            CHECK(bmp::fabs(quad.value - residual) < Real("1e-10"));
        }
    }
}

TEST_CASE("decay bound certified through n = 40") {
    std::vector<ApproxRecord> records = approximation_report(euler_op(), {-1, 14}, {3, -38}, 1,
                                                             40, 170);
    REQUIRE(records.size() == 40);
    for (const auto& r : records) CHECK(r.decay_ok);

    SUBCASE("exponent estimates sit inside [1.9, 2.1] for 20 <= n <= 40") {
        for (const auto& r : records) {
            if (r.n < 20) continue;
            CHECK(r.exponent_estimate >= 1.9);
            CHECK(r.exponent_estimate <= 2.1);
        }
    }
    SUBCASE("raw-denominator exponents degenerate, reduced ones do not") {
        // |b_40| is vastly larger than q_40 = |b_40|/g_40; using it directly
        // would push the estimate toward 1
        const ApproxRecord& r = records[39];
        CHECK(Rational(abs(r.b)) > Rational(r.q) * Rational(Integer(1) << 100));
    }
}

TEST_CASE("gcd structure: empirically g_n = n!") {
    std::vector<ApproxRecord> records = approximation_report(euler_op(), {-1, 14}, {3, -38}, 1,
                                                             30, 130);
    std::vector<GcdRow> rows = gcd_structure(records);
    REQUIRE(rows.size() == 30);
    CHECK(rows[0].g == 1);
    CHECK(rows[1].g == 2);
    CHECK(rows[3].g == 24);
    // brute-force factorial oracle, recomputed independently here
    Integer fact = 1;
    for (size_t i = 0; i < rows.size(); ++i) {
        fact *= static_cast<unsigned>(i + 1);
        CHECK(rows[i].g == fact);
        CHECK(rows[i].a_reduced * rows[i].g == records[i].a);
        CHECK(rows[i].b_reduced * rows[i].g == records[i].b);
    }
    CHECK_THROWS_AS(gcd_structure({}), MathError);
}

TEST_CASE("poincare leading analysis") {
    SUBCASE("euler operator") {
        PoincareReport rep = poincare_leading(euler_op());
        CHECK(rep.q_top == parse_ratfunc("4*N - 1", {"N"}).num());
        CHECK_FALSE(rep.degenerate);
        REQUIRE(rep.rational_roots.size() == 1);
        CHECK(rep.rational_roots[0] == Rational(1, 4));
        CHECK(rep.unresolved.is_zero());
    }
    SUBCASE("central binomial operator") {
        PoincareReport rep = poincare_leading(RecOperator::parse("n + 1 + (-4*n - 6)*N"));
        REQUIRE(rep.rational_roots.size() == 1);
        CHECK(rep.rational_roots[0] == Rational(1, 4));
    }
    SUBCASE("factorial operator is degenerate") {
        PoincareReport rep = poincare_leading(RecOperator::parse("N - n - 1"));
        CHECK(rep.degenerate);
        CHECK(rep.rational_roots.empty());
    }
    SUBCASE("reconstruction identity") {
        for (const char* text : {kEulerOp, "n + 1 + (-4*n - 6)*N", "N - n - 1"}) {
            RecOperator op = RecOperator::parse(text);
            PoincareReport rep = poincare_leading(op);
            // sum_j n^j q_j(N) re-expands to the operator
            MultiPoly acc;
            MultiPoly nv = MultiPoly::variable("n");
            for (size_t j = rep.layers.size(); j-- > 0;)
                acc = acc * nv + rep.layers[j];
            MultiPoly direct;
            MultiPoly N = MultiPoly::variable("N");
            for (size_t k = 0; k < op.coefficients().size(); ++k)
                direct += op.coefficient(k) * N.pow(static_cast<unsigned>(k));
            CHECK(acc == direct);
        }
    }
    SUBCASE("irrational roots are reported as unresolved factors") {
        // q_top(N) = N^2 - 2 has no rational roots
        PoincareReport rep = poincare_leading(RecOperator::parse("n*N^2 - 2*n + 1"));
        CHECK(rep.rational_roots.empty());
        CHECK(rep.unresolved == parse_ratfunc("N^2 - 2", {"N"}).num());
    }
}

TEST_CASE("irrationality criterion") {
    std::vector<ApproxRecord> records = approximation_report(euler_op(), {-1, 14}, {3, -38}, 1,
                                                             20, 100);
    CertifiedRational einv = constant_inv_e(100);

    SUBCASE("delta = 1, C = 1 holds for every n, including 20") {
        auto rows = irrationality_criterion_check(records, einv, 1, 1);
        REQUIRE(rows.size() == 20);
        for (const auto& row : rows) CHECK(row.holds);
    }
    SUBCASE("n = 1 by hand: |e^-1 - 1/3| <= 1/9") {
        auto rows = irrationality_criterion_check({records[0]}, einv, 1, 1);
        CHECK(records[0].p == 1);
        CHECK(records[0].q == 3);
        CHECK(rows[0].holds);
    }
    SUBCASE("an overly strong exponent fails at large n") {
        auto rows = irrationality_criterion_check({records[19]}, einv, 1, 100);
        CHECK_FALSE(rows[0].holds);
    }
    SUBCASE("rejects nonpositive constants") {
        CHECK_THROWS_AS(irrationality_criterion_check(records, einv, 0, 1), MathError);
    }
}

TEST_CASE("insufficient precision is detected, not absorbed") {
    CHECK_THROWS_AS(approximation_report(euler_op(), {-1, 14}, {3, -38}, 1, 20, 5),
                    PrecisionInsufficient);
}
