#include "az/number.hpp"

namespace az {

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    Integer g = gcd(num(a) * den(b), num(b) * den(a));
    return Rational(g, den(a) * den(b));
}

Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (unsigned j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

Rational pow(const Rational& q, long e) {
    if (e == 0) return 1;
    if (q == 0) {
        if (e < 0) throw ZeroDenominator("0 raised to a negative power");
        return 0;
    }
    Rational base = e < 0 ? Rational(den(q), num(q)) : q;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rational r = 1;
    while (k > 0) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

int sign(const Rational& q) {
    if (q > 0) return 1;
    if (q < 0) return -1;
    return 0;
}

Real to_real(const Rational& q) { return Real(num(q)) / Real(den(q)); }

Real to_real(const Integer& n) { return Real(n); }

std::string decimal_string(const Rational& q, int digits) {
    if (digits < 0) digits = 0;
    Integer n = abs(num(q));
    Integer d = den(q);
    Integer ip = n / d;
    Integer rem = n % d;
    std::string out;
    if (q < 0) out += "-";
    out += ip.str();
    if (digits > 0) {
        Integer scale = 1;
        for (int k = 0; k < digits; ++k) scale *= 10;
        Integer frac = rem * scale / d;
        std::string fs = frac.str();
        out += "." + std::string(static_cast<size_t>(digits) - fs.size(), '0') + fs;
    }
    return out;
}

Rational rational_from_string(const std::string& text) {
    try {
        return Rational(text);
    } catch (const std::exception&) {
        throw MathError("invalid rational literal: " + text);
    }
}

}  // namespace az
