#include "az/recurrence.hpp"

namespace az {

bool SequenceTable::check() const {
    const int d = op.order();
    const std::string& n = op.disc_var();
    for (size_t i = 0; i + static_cast<size_t>(d) < values.size(); ++i) {
        long m = start + static_cast<long>(i);
        ExactNumber acc;
        for (int k = 0; k <= d; ++k) {
            Rational pk = op.coefficient(static_cast<size_t>(k))
                              .evaluate({{n, Rational(m)}});
            acc = acc + values[i + static_cast<size_t>(k)].scaled(pk);
        }
        if (!acc.is_zero()) return false;
    }
    return true;
}

SequenceTable unroll(const RecOperator& op, const std::vector<ExactNumber>& initial_values,
                     long start, int count) {
    if (op.depends_on_parameters())
        throw MathError("cannot unroll an operator with unbound parameters: " + op.to_string());
    const int d = op.order();
    if (d == 0) throw MathError("order-0 operator admits only the zero sequence");
    if (static_cast<int>(initial_values.size()) != d)
        throw MathError("expected exactly " + std::to_string(d) + " initial values, got " +
                        std::to_string(initial_values.size()));
    if (count < 0) throw MathError("count must be nonnegative");

    const std::string& n = op.disc_var();
    SequenceTable table{op, start, {}};
    table.values = initial_values;
    if (count < d) {
        table.values.resize(static_cast<size_t>(count));
        return table;
    }
    while (static_cast<int>(table.values.size()) < count) {
        long m = start + static_cast<long>(table.values.size()) - d;
        std::map<std::string, Rational> at{{n, Rational(m)}};
        Rational lead = op.coefficient(static_cast<size_t>(d)).evaluate(at);
        if (lead == 0) throw SingularLeadingCoefficient(m);
        ExactNumber acc;
        for (int k = 0; k < d; ++k) {
            Rational pk = op.coefficient(static_cast<size_t>(k)).evaluate(at);
            acc = acc + table.values[table.values.size() - static_cast<size_t>(d - k)].scaled(pk);
        }
        table.values.push_back(acc.scaled(Rational(-1) / lead));
    }
    return table;
}

bool check_solution(const RecOperator& op, const RatFunc& ratio) {
    if (ratio.den().is_zero()) throw MathError("ratio denominator is zero");
    const std::string& n = op.disc_var();
    RatFunc acc;
    RatFunc prod = RatFunc::constant(1);
    for (int k = 0; k <= op.order(); ++k) {
        if (k > 0) prod *= ratio.shifted(n, k - 1);
        acc += RatFunc(op.coefficient(static_cast<size_t>(k))) * prod;
    }
    return acc.is_zero();
}

std::pair<Rational, Rational> binomial_sum_identity(long n) {
    if (n < 0) throw MathError("index must be nonnegative");
    Rational lhs = 0;
    for (long k = 0; k <= n; ++k) {
        Rational term(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)),
                      Integer(n + k + 1));
        lhs += (k % 2 == 0) ? term : -term;
    }
    Rational rhs(Integer(1),
                 Integer(2 * n + 1) * binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(n)));
    return {lhs, rhs};
}

}  // namespace az
