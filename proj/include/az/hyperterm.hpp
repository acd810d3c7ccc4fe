#pragma once

#include "az/expr.hpp"

#include <map>
#include <string>
#include <vector>

namespace az {

struct NotHyperexponential : MathError {
    explicit NotHyperexponential(const std::string& what)
        : MathError("not hyperexponential: " + what) {}
};

struct EvalError : MathError {
    explicit EvalError(const std::string& what) : MathError(what) {}
};

// One multiplicative factor base^exponent of a hyperexponential term.
// The base is rational in the continuous variable (and parameters) and free
// of the discrete variable; the exponent is a polynomial in the discrete
// variable and parameters, of degree at most 1 in the discrete variable with
// an integer coefficient there.
struct HyperFactor {
    RatFunc base;
    MultiPoly exponent;
};

// Canonical form of a "suitable" integrand
//
//     F_n(x) = prefactor(n) * prod_i base_i(x)^(alpha_i n + beta_i) * exp(u(x)),
//
// the class for which both F_{n+1}/F_n and F'/F are rational. Both ratios
// are computed and validated on construction.
class HyperTerm {
public:
    HyperTerm(std::vector<HyperFactor> factors, RatFunc exp_arg, RatFunc prefactor,
              std::string cont_var = "x", std::string disc_var = "n",
              std::vector<std::string> params = {});

    static HyperTerm from_expr(const ExprNode& tree, const std::string& cont_var = "x",
                               const std::string& disc_var = "n",
                               const std::vector<std::string>& params = {});
    static HyperTerm parse(const std::string& text, const std::string& cont_var = "x",
                           const std::string& disc_var = "n",
                           const std::vector<std::string>& params = {});

    const std::vector<HyperFactor>& factors() const { return factors_; }
    const RatFunc& exp_arg() const { return exp_arg_; }
    const RatFunc& prefactor() const { return prefactor_; }
    const std::string& cont_var() const { return cont_var_; }
    const std::string& disc_var() const { return disc_var_; }
    const std::vector<std::string>& params() const { return params_; }

    // F_{n+j+1}(x) / F_{n+j}(x); j = 0 gives R1.
    const RatFunc& shift_quotient() const { return shift_quotient_; }
    RatFunc shift_quotient(long j) const;

    // F_n'(x) / F_n(x) = R2.
    const RatFunc& log_derivative() const { return log_derivative_; }

    // Integer coefficient of the discrete variable in factors_[i].exponent.
    long slope(size_t i) const;

    // Numeric value of F_n(x). Parameter values are exact rationals so that
    // integrality of instantiated exponents is decidable; throws EvalError at
    // poles and for negative bases with non-integer exponents.
    Real evaluate(long n, const Real& x, const std::map<std::string, Rational>& param_values = {}) const;

    bool operator==(const HyperTerm& o) const;
    std::string to_string() const;

private:
    std::vector<HyperFactor> factors_;
    RatFunc exp_arg_;
    RatFunc prefactor_;
    std::string cont_var_, disc_var_;
    std::vector<std::string> params_;
    RatFunc shift_quotient_;
    RatFunc log_derivative_;

    void validate_and_finish();
};

}  // namespace az
