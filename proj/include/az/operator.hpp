#pragma once

#include "az/expr.hpp"

#include <string>
#include <vector>

namespace az {

// Linear recurrence operator  p_0(n) + p_1(n) N + ... + p_d(n) N^d  with
// polynomial coefficients in the discrete variable (and parameters).
//
// Normalized form: p_d != 0, the coefficients jointly have integer content 1,
// and the graded-lex leading coefficient of p_d is positive. The text format
// produced by to_string() is also accepted by parse().
class RecOperator {
public:
    RecOperator(std::vector<MultiPoly> coeffs, std::string disc_var = "n", bool normalize = true);

    static RecOperator parse(const std::string& text, const std::string& disc_var = "n",
                             const std::vector<std::string>& params = {},
                             const std::string& shift_symbol = "N");

    // Raw coefficient list by powers of N, over the rational-function field;
    // no normalization is applied. Used for exact verification of
    // user-supplied pairs, which may carry rational coefficients.
    static std::vector<RatFunc> parse_coefficients(const std::string& text,
                                                   const std::string& disc_var = "n",
                                                   const std::vector<std::string>& params = {},
                                                   const std::string& shift_symbol = "N");

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<MultiPoly>& coefficients() const { return coeffs_; }
    const MultiPoly& coefficient(size_t k) const { return coeffs_[k]; }
    const std::string& disc_var() const { return disc_var_; }

    std::vector<RatFunc> ratfunc_coefficients() const;

    // Substitutes a rational value for a symbolic parameter.
    RecOperator substituted(const std::string& param, const Rational& value) const;

    bool depends_on_parameters() const;  // any variable besides disc_var

    bool operator==(const RecOperator& o) const {
        return disc_var_ == o.disc_var_ && coeffs_ == o.coeffs_;
    }

    std::string to_string(const std::string& shift_symbol = "N") const;

private:
    std::vector<MultiPoly> coeffs_;
    std::string disc_var_;
};

// Proportionality over the rational-function field:
// p_k^(1) p_j^(2) = p_j^(1) p_k^(2) for all j, k. Requires equal order.
bool operator_equivalent(const RecOperator& a, const RecOperator& b);

}  // namespace az
