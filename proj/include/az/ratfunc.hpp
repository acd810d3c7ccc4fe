#pragma once

#include "az/multipoly.hpp"

namespace az {

// Reduced ratio of two MultiPoly values.
//
// Canonical form: gcd(num, den) = 1 and the denominator is integer-primitive
// with positive graded-lex leading coefficient (so a constant denominator is
// always exactly 1). Equal functions compare equal structurally.
class RatFunc {
public:
    RatFunc() : num_(), den_(MultiPoly::constant(1)) {}
    RatFunc(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(1)) {}
    RatFunc(MultiPoly num, MultiPoly den);

    static RatFunc constant(const Rational& c);
    static RatFunc variable(const std::string& name);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }
    bool is_one() const { return is_constant() && !is_zero() && constant_value() == 1; }

    bool depends_on(const std::string& var) const {
        return num_.depends_on(var) || den_.depends_on(var);
    }
    std::vector<std::string> vars() const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc pow(long e) const;

    RatFunc derivative(const std::string& var) const;
    RatFunc shifted(const std::string& var, long k) const;
    RatFunc substitute(const std::string& var, const RatFunc& value) const;

    // Exact evaluation; throws PoleError when the denominator vanishes.
    Rational evaluate(const std::map<std::string, Rational>& point) const;
    Real evaluate_real(const std::map<std::string, Real>& point) const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    MultiPoly num_, den_;
    void reduce();
};

}  // namespace az
