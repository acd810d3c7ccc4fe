#include "az/irrationality.hpp"

#include "az/recurrence.hpp"

#include <algorithm>

namespace bmp = boost::multiprecision;

namespace az {

Rational inv_e_partial_sum(unsigned k_max) {
    Rational sum = 0;
    Integer fact = 1;
    for (unsigned k = 0; k <= k_max; ++k) {
        if (k > 0) fact *= k;
        Rational term(1, fact);
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

CertifiedRational constant_inv_e(int digits) {
    if (digits < 1) throw MathError("precision must be at least 1 digit");
    Integer bound_den = 1;
    for (int i = 0; i < digits; ++i) bound_den *= 10;
    // first omitted term 1/(K+1)! <= 10^-digits
    Integer fact = 1;
    unsigned k = 0;
    while (fact < bound_den) {
        ++k;
        fact *= k;
    }
    // fact = k! >= 10^digits; truncate after k-1, omit 1/k!
    CertifiedRational out;
    out.value = inv_e_partial_sum(k - 1);
    out.error_bound = Rational(1, fact);
    return out;
}

namespace {

std::vector<Integer> unroll_integers(const RecOperator& op, const std::vector<Integer>& init,
                                     long start, int count) {
    const int d = op.order();
    if (d == 0) throw MathError("order-0 operator admits only the zero sequence");
    if (static_cast<int>(init.size()) != d)
        throw MathError("expected exactly " + std::to_string(d) + " initial values, got " +
                        std::to_string(init.size()));
    const std::string& n = op.disc_var();
    std::vector<Integer> vals = init;
    if (count < d) {
        vals.resize(static_cast<size_t>(std::max(count, 0)));
        return vals;
    }
    while (static_cast<int>(vals.size()) < count) {
        long m = start + static_cast<long>(vals.size()) - d;
        std::map<std::string, Rational> at{{n, Rational(m)}};
        Rational lead = op.coefficient(static_cast<size_t>(d)).evaluate(at);
        if (lead == 0) throw SingularLeadingCoefficient(m);
        if (den(lead) != 1) throw NonIntegralStep(m);
        Rational acc = 0;
        for (int k = 0; k < d; ++k) {
            Rational pk = op.coefficient(static_cast<size_t>(k)).evaluate(at);
            acc += pk * Rational(vals[vals.size() - static_cast<size_t>(d - k)]);
        }
        if (den(acc) != 1) throw NonIntegralStep(m);
        Integer top = num(acc);
        Integer divisor = num(lead);
        Integer quot = top / divisor;
        if (quot * divisor != top) throw NonIntegralStep(m);
        vals.push_back(-quot);
    }
    return vals;
}

}  // namespace

IntegerPair integer_pair_sequence(const RecOperator& op, const std::vector<Integer>& a_init,
                                  const std::vector<Integer>& b_init, long start, int count) {
    if (op.depends_on_parameters())
        throw MathError("cannot unroll an operator with unbound parameters: " + op.to_string());
    IntegerPair out;
    out.start = start;
    out.a = unroll_integers(op, a_init, start, count);
    out.b = unroll_integers(op, b_init, start, count);
    return out;
}

std::vector<ApproxRecord> approximation_report(const RecOperator& op,
                                               const std::vector<Integer>& a_init,
                                               const std::vector<Integer>& b_init, long start,
                                               int n_max, int precision_digits) {
    int count = n_max - static_cast<int>(start) + 1;
    if (count < 1) throw MathError("n_max must be at least the start index");
    IntegerPair seq = integer_pair_sequence(op, a_init, b_init, start, count);
    CertifiedRational einv = constant_inv_e(precision_digits);
    const Rational eps = einv.error_bound;

    std::vector<ApproxRecord> records;
    Rational four_pow = az::pow(Rational(1, 4), start);
    for (int i = 0; i < count; ++i) {
        ApproxRecord rec;
        rec.n = start + i;
        rec.a = seq.a[static_cast<size_t>(i)];
        rec.b = seq.b[static_cast<size_t>(i)];
        if (rec.b == 0) throw MathError("b vanished at index " + std::to_string(rec.n));
        rec.g = gcd(abs(rec.a), abs(rec.b));

        Integer p = -rec.a, q = rec.b;
        if (q < 0) {
            p = -p;
            q = -q;
        }
        Integer g2 = gcd(abs(p), q);
        if (g2 > 1) {
            p /= g2;
            q /= g2;
        }
        rec.p = p;
        rec.q = q;

        rec.residual = Rational(rec.a) + Rational(rec.b) * einv.value;
        rec.residual_err = Rational(abs(rec.b)) * eps;
        Rational mid = abs(rec.residual);
        if (mid <= rec.residual_err)
            throw PrecisionInsufficient(
                "certified error bound dominates |a_n + b_n e^-1| at n = " +
                std::to_string(rec.n) + "; increase precision");

        // decay check, certified on both sides
        rec.decay_rhs = (1 - einv.value) * four_pow;
        Rational lhs_hi = mid + rec.residual_err;
        Rational lhs_lo = mid - rec.residual_err;
        Rational rhs_lo = (1 - einv.value - eps) * four_pow;
        Rational rhs_hi = (1 - einv.value + eps) * four_pow;
        if (lhs_hi <= rhs_lo)
            rec.decay_ok = true;
        else if (lhs_lo > rhs_hi)
            rec.decay_ok = false;
        else
            throw PrecisionInsufficient("decay bound indeterminate at n = " +
                                        std::to_string(rec.n) + "; increase precision");

        // |e^-1 - p/q| = |a + b e^-1| / |b|; estimate from the midpoint.
        Rational diff = mid / Rational(abs(rec.b));
        Real log_diff = bmp::log(to_real(num(diff))) - bmp::log(to_real(den(diff)));
        Real log_q = bmp::log(to_real(rec.q));
        rec.exponent_estimate = static_cast<double>(-log_diff / log_q);

        records.push_back(std::move(rec));
        four_pow /= 4;
    }
    return records;
}

std::vector<GcdRow> gcd_structure(const std::vector<ApproxRecord>& records) {
    if (records.empty()) throw MathError("gcd_structure requires at least one record");
    std::vector<GcdRow> rows;
    rows.reserve(records.size());
    for (const auto& rec : records) {
        GcdRow row;
        row.n = rec.n;
        row.g = rec.g;
        row.a_reduced = rec.a / rec.g;
        row.b_reduced = rec.b / rec.g;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::vector<Integer> positive_divisors(Integer v) {
    v = abs(v);
    // trial division; any cofactor left after the cap is kept as one factor
    std::vector<std::pair<Integer, int>> factors;
    for (Integer p = 2; p * p <= v && p < 1000000; ++p) {
        if (v % p == 0) {
            int e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            factors.emplace_back(p, e);
        }
    }
    if (v > 1) factors.emplace_back(v, 1);
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : factors) {
        size_t base = divs.size();
        Integer pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace

PoincareReport poincare_leading(const RecOperator& op, const std::string& shift_symbol) {
    if (op.depends_on_parameters())
        throw MathError("Poincare analysis requires a parameter-free operator");
    const std::string& n = op.disc_var();
    const MultiPoly N = MultiPoly::variable(shift_symbol);

    PoincareReport report;
    int top = 0;
    for (const auto& p : op.coefficients()) top = std::max(top, p.degree_in(n));
    report.layers.assign(static_cast<size_t>(top) + 1, MultiPoly());
    for (size_t k = 0; k < op.coefficients().size(); ++k) {
        auto by_n = op.coefficient(k).coefficients_in(n);
        for (size_t j = 0; j < by_n.size(); ++j)
            report.layers[j] += by_n[j] * N.pow(static_cast<unsigned>(k));
    }
    report.q_top = report.layers.back();
    report.degenerate = report.q_top.degree_in(shift_symbol) < 1;
    if (report.degenerate) return report;

    // Rational roots of q_top: candidates p/q with p | constant term and
    // q | leading coefficient (after clearing denominators); each candidate
    // is verified exactly and divided out.
    MultiPoly remaining = report.q_top;
    Rational c = remaining.content();
    remaining = remaining.scaled(Rational(1) / c);

    auto coeffs = remaining.coefficients_in(shift_symbol);
    size_t vmin = 0;
    while (coeffs[vmin].is_zero()) ++vmin;
    if (vmin > 0) {
        report.rational_roots.push_back(0);
        std::vector<MultiPoly> shifted(coeffs.begin() + static_cast<long>(vmin), coeffs.end());
        remaining = MultiPoly::assemble_in(shift_symbol, shifted);
    }
    while (remaining.degree_in(shift_symbol) >= 1) {
        auto cs = remaining.coefficients_in(shift_symbol);
        Integer c0 = num(cs.front().constant_value()) * den(cs.back().constant_value());
        Integer cm = num(cs.back().constant_value()) * den(cs.front().constant_value());
        bool found = false;
        for (const Integer& pd : positive_divisors(c0)) {
            for (const Integer& qd : positive_divisors(cm)) {
                for (int s : {1, -1}) {
                    Rational cand(s * pd, qd);
                    if (remaining.evaluate({{shift_symbol, cand}}) == 0) {
                        if (std::find(report.rational_roots.begin(), report.rational_roots.end(),
                                      cand) == report.rational_roots.end())
                            report.rational_roots.push_back(cand);
                        MultiPoly lin = MultiPoly::variable(shift_symbol) * Rational(den(cand)) -
                                        MultiPoly::constant(num(cand));
                        remaining = *remaining.divide_exact(lin);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    if (remaining.degree_in(shift_symbol) >= 1) report.unresolved = remaining;
    std::sort(report.rational_roots.begin(), report.rational_roots.end());
    return report;
}

std::vector<CriterionRow> irrationality_criterion_check(const std::vector<ApproxRecord>& records,
                                                        const CertifiedRational& inv_e,
                                                        const Rational& C, const Rational& delta) {
    if (C <= 0 || delta <= 0) throw MathError("criterion requires C > 0 and delta > 0");
    const Rational e = 1 + delta;
    const long e_num = static_cast<long>(num(e));
    const long e_den = static_cast<long>(den(e));

    std::vector<CriterionRow> rows;
    for (const auto& rec : records) {
        // |e^-1 - p/q| <= C / q^(1+delta), decided via integer powers:
        // x <= C q^-e  <=>  x^e_den q^e_num <= C^e_den  (all positive).
        Rational diff_mid = abs(inv_e.value - Rational(rec.p, rec.q));
        Rational hi = diff_mid + inv_e.error_bound;
        Rational lo = diff_mid - inv_e.error_bound;
        if (lo < 0) lo = 0;
        Rational qr(rec.q);
        Rational rhs = az::pow(C, e_den);
        Rational lhs_hi = az::pow(hi, e_den) * az::pow(qr, e_num);
        Rational lhs_lo = az::pow(lo, e_den) * az::pow(qr, e_num);
        bool holds;
        if (lhs_hi <= rhs)
            holds = true;
        else if (lhs_lo > rhs)
            holds = false;
        else
            throw PrecisionInsufficient("criterion indeterminate at n = " + std::to_string(rec.n) +
                                        "; increase precision");
        rows.push_back(CriterionRow{rec.n, holds});
    }
    return rows;
}

}  // namespace az
