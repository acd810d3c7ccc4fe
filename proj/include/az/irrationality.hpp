#pragma once

#include "az/operator.hpp"

#include <vector>

namespace az {

struct NonIntegralStep : MathError {
    long index;
    explicit NonIntegralStep(long idx)
        : MathError("recurrence step at index " + std::to_string(idx) +
                    " does not divide exactly"),
          index(idx) {}
};

struct PrecisionInsufficient : MathError {
    explicit PrecisionInsufficient(const std::string& what) : MathError(what) {}
};

// Rational r with a certified bound: |r - true value| <= error_bound.
struct CertifiedRational {
    Rational value;
    Rational error_bound;
};

// Partial sum of sum_{k=0}^{k_max} (-1)^k / k!.
Rational inv_e_partial_sum(unsigned k_max);

// e^-1 from the alternating factorial series, truncated where the first
// omitted term drops below 10^-digits; that term is the certified bound.
CertifiedRational constant_inv_e(int digits);

// Exact integer solutions of op for two sets of initial values (the a- and
// b-sequences of an approximant pair share one recurrence). The leading
// coefficient must be
// nonvanishing at every step and each division must be exact.
struct IntegerPair {
    std::vector<Integer> a, b;
    long start = 0;
};

IntegerPair integer_pair_sequence(const RecOperator& op, const std::vector<Integer>& a_init,
                                  const std::vector<Integer>& b_init, long start, int count);

// One row of the approximation analysis at index n.
struct ApproxRecord {
    long n = 0;
    Integer a, b;
    Integer g;               // gcd(|a|, |b|)
    Integer p, q;            // reduced -a/b with q > 0
    Rational residual;       // a + b * einv  (midpoint)
    Rational residual_err;   // |b| * einv error bound
    Rational decay_rhs;      // (1 - einv) 4^-n  (midpoint)
    bool decay_ok = false;   // certified |a + b e^-1| <= (1 - e^-1) 4^-n
    double exponent_estimate = 0;  // -log|e^-1 - p/q| / log q
};

// precision_digits should be at least 4 * n_max; an insufficient precision
// is detected (the certified bound would dominate a measured quantity) and
// raises PrecisionInsufficient rather than producing unreliable rows.
std::vector<ApproxRecord> approximation_report(const RecOperator& op,
                                               const std::vector<Integer>& a_init,
                                               const std::vector<Integer>& b_init, long start,
                                               int n_max, int precision_digits);

struct GcdRow {
    long n;
    Integer g;
    Integer a_reduced, b_reduced;
};

std::vector<GcdRow> gcd_structure(const std::vector<ApproxRecord>& records);

// The operator rewritten as sum_j n^j q_j(N); q_top is the top-degree layer.
struct PoincareReport {
    std::vector<MultiPoly> layers;     // index j -> q_j(N)
    MultiPoly q_top;                   // polynomial in the shift symbol
    std::vector<Rational> rational_roots;
    bool degenerate = false;           // q_top constant in N
    MultiPoly unresolved;              // nonconstant factor with no rational roots (or zero)
};

PoincareReport poincare_leading(const RecOperator& op, const std::string& shift_symbol = "N");

struct CriterionRow {
    long n;
    bool holds;
};

// Checks |e^-1 - p/q| <= C / q^(1+delta) against the reduced fractions with
// certified rational arithmetic; indeterminate rows raise
// PrecisionInsufficient.
std::vector<CriterionRow> irrationality_criterion_check(const std::vector<ApproxRecord>& records,
                                                        const CertifiedRational& inv_e,
                                                        const Rational& C, const Rational& delta);

}  // namespace az
