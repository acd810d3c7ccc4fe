#include "az/exactnum.hpp"

#include "az/expr.hpp"

namespace az {

std::string const_tag_name(ConstTag tag) {
    switch (tag) {
        case ConstTag::None: return "none";
        case ConstTag::InvE: return "inv_e";
        case ConstTag::Pi: return "pi";
    }
    return "none";
}

ConstTag const_tag_from_name(const std::string& name) {
    if (name == "none") return ConstTag::None;
    if (name == "inv_e") return ConstTag::InvE;
    if (name == "pi") return ConstTag::Pi;
    throw MathError("unknown constant tag: " + name);
}

ExactNumber::ExactNumber(Rational rational, Rational coeff, ConstTag tag)
    : rat_(std::move(rational)), coeff_(std::move(coeff)), tag_(tag) {
    if (coeff_ == 0) tag_ = ConstTag::None;
    if (tag_ == ConstTag::None && coeff_ != 0)
        throw MathError("constant coefficient requires a tag");
}

ExactNumber ExactNumber::parse(const std::string& text) {
    RatFunc f = parse_ratfunc(text, {"inv_e", "pi"});
    if (!f.den().is_constant())
        throw MathError("exact value must be linear in the constant: " + text);
    MultiPoly p = f.num().scaled(Rational(1) / f.den().constant_value());
    if (p.vars().empty()) return ExactNumber(p.constant_value());
    if (p.vars().size() > 1) throw MixedConstantTags();
    const std::string& name = p.vars()[0];
    if (p.degree_in(name) > 1)
        throw MathError("exact value must be linear in " + name + ": " + text);
    auto coeffs = p.coefficients_in(name);
    Rational rat = coeffs[0].is_zero() ? Rational(0) : coeffs[0].constant_value();
    Rational coeff = coeffs.size() > 1 && !coeffs[1].is_zero() ? coeffs[1].constant_value() : Rational(0);
    return ExactNumber(rat, coeff, const_tag_from_name(name));
}

ExactNumber ExactNumber::operator-() const {
    ExactNumber r = *this;
    r.rat_ = -r.rat_;
    r.coeff_ = -r.coeff_;
    return r;
}

ExactNumber operator+(const ExactNumber& a, const ExactNumber& b) {
    ConstTag tag;
    if (a.tag_ == b.tag_)
        tag = a.tag_;
    else if (a.tag_ == ConstTag::None)
        tag = b.tag_;
    else if (b.tag_ == ConstTag::None)
        tag = a.tag_;
    else
        throw MixedConstantTags();
    ExactNumber r;
    r.rat_ = a.rat_ + b.rat_;
    r.coeff_ = a.coeff_ + b.coeff_;
    r.tag_ = r.coeff_ == 0 ? ConstTag::None : tag;
    return r;
}

ExactNumber operator-(const ExactNumber& a, const ExactNumber& b) { return a + (-b); }

ExactNumber ExactNumber::scaled(const Rational& c) const {
    ExactNumber r = *this;
    r.rat_ *= c;
    r.coeff_ *= c;
    if (r.coeff_ == 0) r.tag_ = ConstTag::None;
    return r;
}

Real ExactNumber::numeric(const Real& const_value) const {
    return to_real(rat_) + to_real(coeff_) * const_value;
}

std::string ExactNumber::to_string() const {
    if (coeff_ == 0) return rat_.str();
    std::string cs;
    Rational ac = abs(coeff_);
    if (ac == 1)
        cs = const_tag_name(tag_);
    else
        cs = ac.str() + "*" + const_tag_name(tag_);
    if (rat_ == 0) return (coeff_ < 0 ? "-" : "") + cs;
    return rat_.str() + (coeff_ < 0 ? " - " : " + ") + cs;
}

}  // namespace az
