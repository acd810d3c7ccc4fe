#pragma once

#include "az/exactnum.hpp"
#include "az/operator.hpp"

#include <vector>

namespace az {

struct SingularLeadingCoefficient : MathError {
    long index;
    explicit SingularLeadingCoefficient(long idx)
        : MathError("leading coefficient vanishes at index " + std::to_string(idx)), index(idx) {}
};

// Exact unrolled values of a recurrence; values[i] is the term at index
// start + i and every entry beyond the initial ones satisfies the recurrence
// exactly against its predecessors.
struct SequenceTable {
    RecOperator op;
    long start = 0;
    std::vector<ExactNumber> values;

    // Substitution check of the stored values against op.
    bool check() const;
};

// Steps the recurrence sum_k p_k(m) v_{m+k} = 0 forward by solving for the
// top term; requires exactly d initial values at indices start..start+d-1.
SequenceTable unroll(const RecOperator& op, const std::vector<ExactNumber>& initial_values,
                     long start, int count);

// True iff sequences with c_{n+1}/c_n = ratio(n) are annihilated by op:
// sum_k p_k(n) prod_{j<k} ratio(n+j) = 0 identically.
bool check_solution(const RecOperator& op, const RatFunc& ratio);

// Both sides of  sum_{k=0}^n C(n,k) (-1)^k/(n+k+1)  =  1/((2n+1) C(2n,n)).
std::pair<Rational, Rational> binomial_sum_identity(long n);

}  // namespace az
