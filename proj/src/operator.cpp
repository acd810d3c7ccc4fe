#include "az/operator.hpp"

#include <sstream>

namespace az {

RecOperator::RecOperator(std::vector<MultiPoly> coeffs, std::string disc_var, bool normalize)
    : coeffs_(std::move(coeffs)), disc_var_(std::move(disc_var)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) throw MathError("zero recurrence operator");
    if (!normalize) return;
    Rational c = 0;
    for (const auto& p : coeffs_) c = rational_gcd(c, p.content());
    if (coeffs_.back().leading_coefficient() < 0) c = -c;
    if (c != 1)
        for (auto& p : coeffs_) p = p.scaled(Rational(1) / c);
}

std::vector<RatFunc> RecOperator::parse_coefficients(const std::string& text,
                                                     const std::string& disc_var,
                                                     const std::vector<std::string>& params,
                                                     const std::string& shift_symbol) {
    std::set<std::string> allowed{disc_var, shift_symbol};
    allowed.insert(params.begin(), params.end());
    RatFunc f = parse_ratfunc(text, allowed);
    if (f.den().depends_on(shift_symbol))
        throw MathError("operator denominator contains " + shift_symbol + ": " + text);
    std::vector<MultiPoly> nums = f.num().coefficients_in(shift_symbol);
    std::vector<RatFunc> out;
    out.reserve(nums.size());
    for (auto& p : nums) out.emplace_back(RatFunc(std::move(p), f.den()));
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    return out;
}

RecOperator RecOperator::parse(const std::string& text, const std::string& disc_var,
                               const std::vector<std::string>& params,
                               const std::string& shift_symbol) {
    std::vector<RatFunc> raw = parse_coefficients(text, disc_var, params, shift_symbol);
    // Clear the common denominator; the recurrence it generates is unchanged
    // away from the denominator's zeros.
    MultiPoly lcd = MultiPoly::constant(1);
    for (const auto& c : raw) lcd = MultiPoly::lcm(lcd, c.den());
    std::vector<MultiPoly> coeffs;
    coeffs.reserve(raw.size());
    for (const auto& c : raw) {
        auto q = lcd.divide_exact(c.den());
        coeffs.push_back(c.num() * *q);
    }
    return RecOperator(std::move(coeffs), disc_var);
}

std::vector<RatFunc> RecOperator::ratfunc_coefficients() const {
    std::vector<RatFunc> out;
    out.reserve(coeffs_.size());
    for (const auto& p : coeffs_) out.emplace_back(p);
    return out;
}

RecOperator RecOperator::substituted(const std::string& param, const Rational& value) const {
    std::vector<MultiPoly> coeffs;
    coeffs.reserve(coeffs_.size());
    for (const auto& p : coeffs_)
        coeffs.push_back(p.substitute(param, MultiPoly::constant(value)));
    return RecOperator(std::move(coeffs), disc_var_);
}

bool RecOperator::depends_on_parameters() const {
    for (const auto& p : coeffs_)
        for (const auto& v : p.vars())
            if (v != disc_var_) return true;
    return false;
}

std::string RecOperator::to_string(const std::string& shift_symbol) const {
    std::ostringstream out;
    bool first = true;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        const MultiPoly& p = coeffs_[k];
        if (p.is_zero()) continue;
        std::string ns = shift_symbol;
        if (k > 1) ns += "^" + std::to_string(k);

        bool negate = false;
        MultiPoly q = p;
        if (!first && p.terms().size() == 1 && p.leading_coefficient() < 0) {
            negate = true;
            q = -p;
        }
        std::string cs;
        if (k == 0) {
            cs = q.to_string();
        } else if (q.is_one()) {
            cs = ns;
        } else if (q.is_constant() && q.constant_value() == -1) {
            cs = "-" + ns;
        } else if (q.terms().size() == 1) {
            cs = q.to_string() + "*" + ns;
        } else {
            cs = "(" + q.to_string() + ")*" + ns;
        }
        if (first) {
            out << cs;
            first = false;
        } else {
            out << (negate ? " - " : " + ") << cs;
        }
    }
    return out.str();
}

bool operator_equivalent(const RecOperator& a, const RecOperator& b) {
    if (a.order() != b.order()) return false;
    const auto& pa = a.coefficients();
    const auto& pb = b.coefficients();
    for (size_t k = 0; k < pa.size(); ++k)
        for (size_t j = k + 1; j < pa.size(); ++j)
            if (!(pa[k] * pb[j] == pa[j] * pb[k])) return false;
    return true;
}

}  // namespace az
