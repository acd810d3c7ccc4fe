#include "az/ratfunc.hpp"

#include <algorithm>
#include <cassert>

namespace az {

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ZeroDenominator("rational function with zero denominator");
    reduce();
}

RatFunc RatFunc::constant(const Rational& c) { return RatFunc(MultiPoly::constant(c)); }

RatFunc RatFunc::variable(const std::string& name) { return RatFunc(MultiPoly::variable(name)); }

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(1);
        return;
    }
    if (!den_.is_constant()) {
        MultiPoly g = MultiPoly::gcd(num_, den_);
        if (!g.is_one()) {
            auto qn = num_.divide_exact(g);
            auto qd = den_.divide_exact(g);
            assert(qn && qd);
            num_ = std::move(*qn);
            den_ = std::move(*qd);
        }
    }
    Rational c = den_.content();
    if (den_.leading_coefficient() < 0) c = -c;
    if (c != 1) {
        num_ = num_.scaled(Rational(1) / c);
        den_ = den_.scaled(Rational(1) / c);
    }
}

std::vector<std::string> RatFunc::vars() const {
    std::vector<std::string> out;
    std::set_union(num_.vars().begin(), num_.vars().end(), den_.vars().begin(), den_.vars().end(),
                   std::back_inserter(out));
    return out;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw ZeroDenominator("division by the zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(long e) const {
    if (e == 0) return constant(1);
    if (is_zero()) {
        if (e < 0) throw ZeroDenominator("0 raised to a negative power");
        return RatFunc();
    }
    unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
    MultiPoly n = num_.pow(k), d = den_.pow(k);
    return e < 0 ? RatFunc(std::move(d), std::move(n)) : RatFunc(std::move(n), std::move(d));
}

RatFunc RatFunc::derivative(const std::string& var) const {
    // quotient rule; construction re-reduces
    return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RatFunc RatFunc::shifted(const std::string& var, long k) const {
    if (k == 0 || !depends_on(var)) return *this;
    return RatFunc(num_.shifted(var, k), den_.shifted(var, k));
}

RatFunc RatFunc::substitute(const std::string& var, const RatFunc& value) const {
    if (!depends_on(var)) return *this;
    auto sub_poly = [&](const MultiPoly& p) {
        std::vector<MultiPoly> coeffs = p.coefficients_in(var);
        RatFunc acc;
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * value + RatFunc(coeffs[i]);
        return acc;
    };
    return sub_poly(num_) / sub_poly(den_);
}

Rational RatFunc::evaluate(const std::map<std::string, Rational>& point) const {
    Rational d = den_.evaluate(point);
    if (d == 0) throw PoleError("pole: denominator " + den_.to_string() + " vanishes");
    return num_.evaluate(point) / d;
}

Real RatFunc::evaluate_real(const std::map<std::string, Real>& point) const {
    Real d = den_.evaluate_real(point);
    if (d == 0) throw PoleError("pole: denominator " + den_.to_string() + " vanishes");
    return num_.evaluate_real(point) / d;
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string();
    std::string ns = num_.to_string();
    if (num_.terms().size() > 1) ns = "(" + ns + ")";
    // Denominator goes bare only when that cannot change how the string
    // reparses: a single power of a single variable.
    std::string ds = den_.to_string();
    bool bare = den_.terms().size() == 1 && den_.leading_coefficient() == 1 &&
                den_.vars().size() == 1;
    if (!bare) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

}  // namespace az
