#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>

namespace az {

// Exact arbitrary-precision scalars. Integer has a dedicated zero state and
// never overflows; Rational keeps denominator > 0 and gcd(num, den) = 1.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Working floating type for quadrature and endpoint numerics (50 decimal digits).
using Real = boost::multiprecision::cpp_bin_float_50;

struct MathError : std::runtime_error {
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroDenominator : MathError {
    explicit ZeroDenominator(const std::string& what) : MathError(what) {}
};

struct PoleError : MathError {
    explicit PoleError(const std::string& what) : MathError(what) {}
};

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Integer abs(const Integer& a) { return boost::multiprecision::abs(a); }
inline Rational abs(const Rational& a) { return boost::multiprecision::abs(a); }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

// Positive gcd on rationals: gcd(a/b, c/d) = gcd(ad, cb)/(bd). gcd(q, 0) = |q|.
Rational rational_gcd(const Rational& a, const Rational& b);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

// q^e for signed e; throws ZeroDenominator when q = 0 and e < 0.
Rational pow(const Rational& q, long e);

int sign(const Rational& q);

Real to_real(const Rational& q);
Real to_real(const Integer& n);

// Fixed-point decimal rendering, truncated toward zero, exactly `digits`
// digits after the point.
std::string decimal_string(const Rational& q, int digits);

Rational rational_from_string(const std::string& text);

}  // namespace az
