#pragma once

#include "az/hyperterm.hpp"

#include <functional>
#include <string>

namespace az {

// Integration domain with exact rational endpoints where finite.
struct Interval {
    enum class Kind { Finite, LeftFinite, FullLine };

    Kind kind = Kind::Finite;
    Rational a = 0, b = 1;  // [a, b] when Finite; [a, inf) when LeftFinite

    static Interval finite(const Rational& a, const Rational& b);
    static Interval left_finite(const Rational& a);
    static Interval full_line();

    // "a,b" | "a,inf" | "-inf,inf"
    static Interval parse(const std::string& text);
    std::string to_string() const;
};

// Substitution onto a finite parameter domain:
//   [a, b]      x = a + (b-a) t          t in (0, 1)
//   [a, inf)    x = a + t/(1-t)          t in (0, 1)
//   (-inf, inf) x = t/(1-t^2)            t in (-1, 1)
// jacobian(t) = dx/dt, supplied exactly.
struct Transform {
    Interval::Kind kind;
    Real a = 0, width = 1;
    Real lo, hi;  // parameter domain

    Real x(const Real& t) const;
    Real jacobian(const Real& t) const;
};

Transform transform(const Interval& interval);

struct NonConvergence : MathError {
    explicit NonConvergence(const std::string& what) : MathError(what) {}
};

struct QuadResult {
    Real value = 0;
    Real error_estimate = 0;
    unsigned long evaluations = 0;
    int max_depth = 0;
};

struct QuadConfig {
    Real tol = Real("1e-12");
    int max_depth = 40;
};

// Deterministic adaptive Gauss-Legendre quadrature of a real integrand over
// the transformed parameter domain. Panels are bisected until the local
// error estimate fits within a width-proportional share of tol; accumulation
// order is fixed, so results are reproducible bit for bit.
QuadResult integrate(const std::function<Real(const Real&)>& f, const Transform& tr,
                     const QuadConfig& config);

// Integrates F_n over the interval.
QuadResult integrate(const HyperTerm& h, long n, const Interval& interval,
                     const std::map<std::string, Rational>& param_values = {},
                     const QuadConfig& config = {});

}  // namespace az
