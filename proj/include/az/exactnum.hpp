#pragma once

#include "az/number.hpp"

#include <string>

namespace az {

enum class ConstTag { None, InvE, Pi };

std::string const_tag_name(ConstTag tag);
ConstTag const_tag_from_name(const std::string& name);

struct MixedConstantTags : MathError {
    MixedConstantTags() : MathError("cannot combine values tagged with different constants") {}
};

// Exact value  rational + coeff * c  for a single tagged constant
// c in {e^-1, pi}. Values with coeff = 0 carry tag None and combine freely;
// combining two different nonzero tags is an error.
class ExactNumber {
public:
    ExactNumber() = default;
    ExactNumber(Rational rational) : rat_(std::move(rational)) {}
    ExactNumber(Rational rational, Rational coeff, ConstTag tag);

    static ExactNumber parse(const std::string& text);

    const Rational& rational_part() const { return rat_; }
    const Rational& const_coeff() const { return coeff_; }
    ConstTag tag() const { return tag_; }
    bool is_rational() const { return tag_ == ConstTag::None; }

    ExactNumber operator-() const;
    friend ExactNumber operator+(const ExactNumber& a, const ExactNumber& b);
    friend ExactNumber operator-(const ExactNumber& a, const ExactNumber& b);
    ExactNumber scaled(const Rational& c) const;

    bool operator==(const ExactNumber& o) const {
        return rat_ == o.rat_ && coeff_ == o.coeff_ && tag_ == o.tag_;
    }

    bool is_zero() const { return rat_ == 0 && coeff_ == 0; }

    // Numeric value given the constant's value.
    Real numeric(const Real& const_value) const;

    std::string to_string() const;

private:
    Rational rat_ = 0;
    Rational coeff_ = 0;
    ConstTag tag_ = ConstTag::None;
};

}  // namespace az
