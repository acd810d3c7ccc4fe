#pragma once

#include "az/number.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace az {

// Sparse multivariate polynomial over Q.
//
// Representation: an ordered variable list (sorted by name) plus a map from
// exponent vectors to nonzero rational coefficients. Variables that no term
// uses are dropped, so equal polynomials compare equal structurally. Terms
// are kept in graded lexicographic order (total degree first, exponent
// vector second); printing is ascending in that order and the leading term
// is the maximal one.
class MultiPoly {
public:
    using Monomial = std::vector<std::uint32_t>;

    struct GrlexLess {
        bool operator()(const Monomial& a, const Monomial& b) const;
    };

    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    MultiPoly() = default;  // zero
    static MultiPoly constant(const Rational& c);
    static MultiPoly variable(const std::string& name);
    static MultiPoly from_terms(std::vector<std::string> vars, TermMap terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return vars_.empty(); }
    // Requires is_constant(); zero polynomial yields 0.
    Rational constant_value() const;
    bool is_one() const { return is_constant() && constant_value() == 1; }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool depends_on(const std::string& var) const;

    int total_degree() const;  // -1 for the zero polynomial
    int degree_in(const std::string& var) const;

    // Coefficient of the grlex-maximal term; 0 for the zero polynomial.
    Rational leading_coefficient() const;
    // Positive rational gcd of all coefficients; 0 for the zero polynomial.
    Rational content() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

    MultiPoly scaled(const Rational& c) const;
    MultiPoly pow(unsigned e) const;

    MultiPoly derivative(const std::string& var) const;
    MultiPoly substitute(const std::string& var, const MultiPoly& value) const;
    MultiPoly shifted(const std::string& var, long k) const;  // var -> var + k
    Rational evaluate(const std::map<std::string, Rational>& point) const;
    Real evaluate_real(const std::map<std::string, Real>& point) const;

    // Exact quotient, or nullopt when the division leaves a remainder.
    std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;

    // Canonically normalized gcd: the rational gcd of the two contents times
    // the primitive gcd with positive leading coefficient. gcd(p, 0) = the
    // normalized p; gcd(0, 0) is an error.
    static MultiPoly gcd(const MultiPoly& p, const MultiPoly& q);
    // Positive-leading lcm; lcm(p, 0) is an error.
    static MultiPoly lcm(const MultiPoly& p, const MultiPoly& q);

    // Dense coefficient list in `var` (index = power); entries do not
    // involve `var`. The zero polynomial yields {0}.
    std::vector<MultiPoly> coefficients_in(const std::string& var) const;
    static MultiPoly assemble_in(const std::string& var, const std::vector<MultiPoly>& coeffs);

    bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    void insert_term(const Monomial& m, const Rational& c);
    void compress();
    static void align(const MultiPoly& a, const MultiPoly& b, std::vector<std::string>& vars,
                      TermMap& ta, TermMap& tb);
    static TermMap remap(const TermMap& terms, const std::vector<std::string>& from,
                         const std::vector<std::string>& to);
};

MultiPoly operator*(const MultiPoly& p, const Rational& c);
MultiPoly operator*(const Rational& c, const MultiPoly& p);

}  // namespace az
