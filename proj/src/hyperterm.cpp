#include "az/hyperterm.hpp"

#include <algorithm>
#include <sstream>

namespace bmp = boost::multiprecision;

namespace az {

namespace {

struct Decomp {
    std::vector<HyperFactor> factors;
    RatFunc exp_arg;
    RatFunc prefactor = RatFunc::constant(1);
};

struct Context {
    std::string x, n;
    std::vector<std::string> params;
    std::set<std::string> all;  // x, n, params
};

// Splits a rational function of (n, x, params) into an x-free part times an
// n-free part; fails when a numerator or denominator genuinely mixes the two
// (such as x + n), which falls outside the supported class.
bool separate(const RatFunc& f, const Context& ctx, RatFunc& x_free, RatFunc& n_free) {
    auto split_poly = [&](const MultiPoly& p, MultiPoly& xf, MultiPoly& nf) {
        if (!p.depends_on(ctx.x)) {
            xf = p;
            nf = MultiPoly::constant(1);
            return true;
        }
        if (!p.depends_on(ctx.n)) {
            xf = MultiPoly::constant(1);
            nf = p;
            return true;
        }
        MultiPoly cont;
        bool first = true;
        for (const auto& c : p.coefficients_in(ctx.x)) {
            if (c.is_zero()) continue;
            cont = first ? MultiPoly::gcd(c, MultiPoly()) : MultiPoly::gcd(cont, c);
            first = false;
        }
        auto pp = p.divide_exact(cont);
        if (!pp || pp->depends_on(ctx.n)) return false;
        xf = cont;
        nf = *pp;
        return true;
    };
    MultiPoly nx, nn, dx, dn;
    if (!split_poly(f.num(), nx, nn)) return false;
    if (!split_poly(f.den(), dx, dn)) return false;
    x_free = RatFunc(nx, dx);
    n_free = RatFunc(nn, dn);
    return true;
}

// Exponents must be polynomials in the discrete variable and parameters.
MultiPoly exponent_poly(const ExprNode& node, const Context& ctx) {
    RatFunc e;
    try {
        e = expr_to_ratfunc(node, ctx.all);
    } catch (const NotRational& err) {
        throw NotHyperexponential(std::string("unsupported exponent ") + node.describe() + ": " +
                                  err.what());
    }
    if (e.depends_on(ctx.x))
        throw NotHyperexponential("exponent depends on " + ctx.x + ": " + node.describe());
    if (!e.den().is_constant())
        throw NotHyperexponential("exponent is not polynomial: " + node.describe());
    return e.num().scaled(Rational(1) / e.den().constant_value());
}

void merge(Decomp& into, Decomp&& other) {
    for (auto& f : other.factors) into.factors.push_back(std::move(f));
    into.exp_arg += other.exp_arg;
    into.prefactor *= other.prefactor;
}

void raise_to(Decomp& d, const MultiPoly& e, const Context& ctx, const ExprNode& where) {
    for (auto& f : d.factors) f.exponent *= e;
    if (!d.exp_arg.is_zero()) {
        if (e.depends_on(ctx.n))
            throw NotHyperexponential("exp(...) raised to an exponent containing " + ctx.n + ": " +
                                      where.describe());
        d.exp_arg *= RatFunc(e);
    }
    if (!d.prefactor.is_one()) {
        if (e.is_constant() && den(e.constant_value()) == 1) {
            d.prefactor = d.prefactor.pow(static_cast<long>(num(e.constant_value())));
        } else {
            throw NotHyperexponential("factor " + d.prefactor.to_string() +
                                      " free of " + ctx.x + " raised to non-constant exponent: " +
                                      where.describe());
        }
    }
}

void invert(Decomp& d, const ExprNode& where, const Context& ctx) {
    MultiPoly minus_one = MultiPoly::constant(-1);
    raise_to(d, minus_one, ctx, where);
}

Decomp convert(const ExprNode& node, const Context& ctx);

// A subtree with no exp() and only integer powers: a plain rational function.
Decomp convert_rational(const RatFunc& f, const MultiPoly& expo, const Context& ctx,
                        const ExprNode& where) {
    Decomp d;
    if (f.is_zero()) throw NotHyperexponential("zero base in " + where.describe());
    bool const_int_exp = expo.is_constant() && den(expo.constant_value()) == 1;
    if (!f.depends_on(ctx.x)) {
        if (f.is_one()) return d;
        if (const_int_exp) {
            d.prefactor = f.pow(static_cast<long>(num(expo.constant_value())));
            return d;
        }
        throw NotHyperexponential("factor " + f.to_string() + " is free of " + ctx.x +
                                  " but has exponent " + expo.to_string() +
                                  "; only rational functions of " + ctx.n +
                                  " may appear outside the power factors (" + where.describe() + ")");
    }
    RatFunc x_free, n_free;
    if (f.depends_on(ctx.n)) {
        if (!separate(f, ctx, x_free, n_free))
            throw NotHyperexponential("base mixes " + ctx.x + " and " + ctx.n +
                                      " non-separably: " + where.describe());
        if (!x_free.is_one()) {
            if (const_int_exp) {
                d.prefactor = x_free.pow(static_cast<long>(num(expo.constant_value())));
            } else {
                throw NotHyperexponential("factor " + x_free.to_string() + " free of " + ctx.x +
                                          " raised to exponent " + expo.to_string() + ": " +
                                          where.describe());
            }
        }
    } else {
        n_free = f;
    }
    d.factors.push_back(HyperFactor{n_free, expo});
    return d;
}

Decomp convert(const ExprNode& node, const Context& ctx) {
    switch (node.kind) {
        case ExprNode::Kind::Number: {
            Decomp d;
            if (node.value == 0) throw NotHyperexponential("integrand is identically zero");
            d.prefactor = RatFunc::constant(node.value);
            return d;
        }
        case ExprNode::Kind::Symbol: {
            if (!ctx.all.count(node.name)) throw UnknownSymbol(node.name, node.offset);
            Decomp d;
            if (node.name == ctx.x) {
                d.factors.push_back(
                    HyperFactor{RatFunc::variable(ctx.x), MultiPoly::constant(1)});
            } else {
                d.prefactor = RatFunc::variable(node.name);
            }
            return d;
        }
        case ExprNode::Kind::Neg: {
            Decomp d = convert(node.children[0], ctx);
            d.prefactor = -d.prefactor;
            return d;
        }
        case ExprNode::Kind::Mul: {
            Decomp d = convert(node.children[0], ctx);
            merge(d, convert(node.children[1], ctx));
            return d;
        }
        case ExprNode::Kind::Div: {
            Decomp d = convert(node.children[0], ctx);
            Decomp rhs = convert(node.children[1], ctx);
            invert(rhs, node, ctx);
            merge(d, std::move(rhs));
            return d;
        }
        case ExprNode::Kind::Exp: {
            RatFunc arg;
            try {
                arg = expr_to_ratfunc(node.children[0], ctx.all);
            } catch (const NotRational& err) {
                throw NotHyperexponential("exp argument is not rational: " +
                                          node.children[0].describe() + ": " + err.what());
            }
            if (arg.depends_on(ctx.n))
                throw NotHyperexponential("exp argument depends on " + ctx.n + ": " +
                                          node.children[0].describe());
            Decomp d;
            d.exp_arg = arg;
            return d;
        }
        case ExprNode::Kind::Pow: {
            MultiPoly e = exponent_poly(node.children[1], ctx);
            if (e.is_zero()) return Decomp{};
            const ExprNode& base = node.children[0];
            // A rational base is handled directly; anything else (nested exp
            // or symbolic powers) is decomposed recursively and raised.
            try {
                RatFunc f = expr_to_ratfunc(base, ctx.all);
                return convert_rational(f, e, ctx, node);
            } catch (const NotRational&) {
                Decomp d = convert(base, ctx);
                raise_to(d, e, ctx, node);
                return d;
            }
        }
        case ExprNode::Kind::Add:
        case ExprNode::Kind::Sub: {
            RatFunc f;
            try {
                f = expr_to_ratfunc(node, ctx.all);
            } catch (const NotRational& err) {
                throw NotHyperexponential("sum is not a rational function: " + node.describe() +
                                          ": " + err.what());
            }
            if (f.is_zero()) throw NotHyperexponential("integrand is identically zero");
            if (!f.depends_on(ctx.x)) {
                Decomp d;
                d.prefactor = f;
                return d;
            }
            return convert_rational(f, MultiPoly::constant(1), ctx, node);
        }
    }
    throw MathError("corrupt expression node");
}

}  // namespace

HyperTerm::HyperTerm(std::vector<HyperFactor> factors, RatFunc exp_arg, RatFunc prefactor,
                     std::string cont_var, std::string disc_var, std::vector<std::string> params)
    : factors_(std::move(factors)),
      exp_arg_(std::move(exp_arg)),
      prefactor_(std::move(prefactor)),
      cont_var_(std::move(cont_var)),
      disc_var_(std::move(disc_var)),
      params_(std::move(params)) {
    validate_and_finish();
}

void HyperTerm::validate_and_finish() {
    std::set<std::string> param_set(params_.begin(), params_.end());
    auto vars_ok = [&](const RatFunc& f, bool allow_x, bool allow_n) {
        for (const auto& v : f.vars()) {
            if (v == cont_var_) {
                if (!allow_x) return false;
            } else if (v == disc_var_) {
                if (!allow_n) return false;
            } else if (!param_set.count(v)) {
                return false;
            }
        }
        return true;
    };

    if (prefactor_.is_zero()) throw NotHyperexponential("integrand is identically zero");
    if (!vars_ok(prefactor_, false, true))
        throw NotHyperexponential("prefactor " + prefactor_.to_string() + " must be rational in " +
                                  disc_var_ + " and the declared parameters");
    if (!vars_ok(exp_arg_, true, false))
        throw NotHyperexponential("exp argument " + exp_arg_.to_string() + " must be rational in " +
                                  cont_var_ + " and the declared parameters");

    // Merge equal bases, drop vanished exponents, validate each factor.
    std::vector<HyperFactor> merged;
    for (auto& f : factors_) {
        if (f.base.is_zero()) throw NotHyperexponential("zero base");
        if (f.base.is_one()) continue;
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const HyperFactor& g) { return g.base == f.base; });
        if (it == merged.end())
            merged.push_back(std::move(f));
        else
            it->exponent += f.exponent;
    }
    factors_.clear();
    for (auto& f : merged) {
        if (f.exponent.is_zero()) {
            continue;
        }
        if (!f.base.depends_on(cont_var_))
            throw NotHyperexponential("base " + f.base.to_string() + " is constant in " + cont_var_);
        if (!vars_ok(f.base, true, false))
            throw NotHyperexponential("base " + f.base.to_string() + " depends on " + disc_var_);
        if (f.exponent.depends_on(cont_var_))
            throw NotHyperexponential("exponent " + f.exponent.to_string() + " depends on " +
                                      cont_var_);
        if (!vars_ok(RatFunc(f.exponent), false, true))
            throw NotHyperexponential("exponent " + f.exponent.to_string() +
                                      " involves undeclared symbols");
        int dn = f.exponent.degree_in(disc_var_);
        if (dn > 1)
            throw NotHyperexponential("exponent " + f.exponent.to_string() + " has degree " +
                                      std::to_string(dn) + " in " + disc_var_ +
                                      " on base " + f.base.to_string());
        if (dn == 1) {
            MultiPoly slope_coeff = f.exponent.coefficients_in(disc_var_)[1];
            if (!slope_coeff.is_constant() || den(slope_coeff.constant_value()) != 1)
                throw NotHyperexponential("coefficient of " + disc_var_ + " in exponent " +
                                          f.exponent.to_string() + " must be an integer (base " +
                                          f.base.to_string() + ")");
        }
        factors_.push_back(std::move(f));
    }
    std::sort(factors_.begin(), factors_.end(), [](const HyperFactor& a, const HyperFactor& b) {
        std::string sa = a.base.to_string(), sb = b.base.to_string();
        if (sa != sb) return sa < sb;
        return a.exponent.to_string() < b.exponent.to_string();
    });

    // R1 = prod base_i^alpha_i * prefactor(n+1)/prefactor(n)
    RatFunc r1 = prefactor_.shifted(disc_var_, 1) / prefactor_;
    for (size_t i = 0; i < factors_.size(); ++i) r1 *= factors_[i].base.pow(slope(i));
    shift_quotient_ = r1;

    // R2 = sum exponent_i * base_i'/base_i + u'
    RatFunc r2 = exp_arg_.derivative(cont_var_);
    for (const auto& f : factors_)
        r2 += RatFunc(f.exponent) * f.base.derivative(cont_var_) / f.base;
    log_derivative_ = r2;
}

long HyperTerm::slope(size_t i) const {
    const MultiPoly& e = factors_[i].exponent;
    if (e.degree_in(disc_var_) < 1) return 0;
    return static_cast<long>(num(e.coefficients_in(disc_var_)[1].constant_value()));
}

HyperTerm HyperTerm::from_expr(const ExprNode& tree, const std::string& cont_var,
                               const std::string& disc_var,
                               const std::vector<std::string>& params) {
    Context ctx;
    ctx.x = cont_var;
    ctx.n = disc_var;
    ctx.params = params;
    if (cont_var == disc_var)
        throw MathError("continuous and discrete variables must differ");
    ctx.all.insert(cont_var);
    ctx.all.insert(disc_var);
    for (const auto& p : params) {
        if (p == cont_var || p == disc_var || p == "exp")
            throw MathError("parameter name '" + p + "' collides with a reserved symbol");
        ctx.all.insert(p);
    }
    Decomp d = convert(tree, ctx);
    return HyperTerm(std::move(d.factors), std::move(d.exp_arg), std::move(d.prefactor), cont_var,
                     disc_var, params);
}

HyperTerm HyperTerm::parse(const std::string& text, const std::string& cont_var,
                           const std::string& disc_var, const std::vector<std::string>& params) {
    return from_expr(parse_expression(text), cont_var, disc_var, params);
}

RatFunc HyperTerm::shift_quotient(long j) const { return shift_quotient_.shifted(disc_var_, j); }

Real HyperTerm::evaluate(long n, const Real& x,
                         const std::map<std::string, Rational>& param_values) const {
    std::map<std::string, Rational> exact_point;
    exact_point[disc_var_] = Rational(n);
    std::map<std::string, Real> real_point;
    real_point[cont_var_] = x;
    for (const auto& p : params_) {
        auto it = param_values.find(p);
        if (it == param_values.end()) throw EvalError("no value supplied for parameter " + p);
        exact_point[p] = it->second;
        real_point[p] = to_real(it->second);
    }

    Real result = to_real(prefactor_.evaluate(exact_point));
    for (size_t i = 0; i < factors_.size(); ++i) {
        Real base = factors_[i].base.evaluate_real(real_point);
        Rational e = factors_[i].exponent.evaluate(exact_point);
        if (base == 0) {
            if (e > 0) return Real(0);
            if (e == 0) continue;
            throw EvalError("pole: base " + factors_[i].base.to_string() +
                            " vanishes with negative exponent");
        }
        if (den(e) == 1) {
            long ei = static_cast<long>(num(e));
            Real p = bmp::pow(base, static_cast<int>(ei < 0 ? -ei : ei));
            result *= ei < 0 ? Real(1) / p : p;
        } else if (base > 0) {
            result *= bmp::exp(to_real(e) * bmp::log(base));
        } else {
            throw EvalError("negative base " + factors_[i].base.to_string() +
                            " with non-integer exponent " + e.str());
        }
    }
    if (!exp_arg_.is_zero()) result *= bmp::exp(exp_arg_.evaluate_real(real_point));
    return result;
}

bool HyperTerm::operator==(const HyperTerm& o) const {
    if (cont_var_ != o.cont_var_ || disc_var_ != o.disc_var_) return false;
    if (!(prefactor_ == o.prefactor_) || !(exp_arg_ == o.exp_arg_)) return false;
    if (factors_.size() != o.factors_.size()) return false;
    for (size_t i = 0; i < factors_.size(); ++i)
        if (!(factors_[i].base == o.factors_[i].base) ||
            !(factors_[i].exponent == o.factors_[i].exponent))
            return false;
    return true;
}

namespace {

std::string wrap_base(const RatFunc& base) {
    std::string s = base.to_string();
    bool atom = base.den().is_one() && base.num().terms().size() == 1 &&
                base.num().leading_coefficient() == 1 && base.num().vars().size() == 1 &&
                base.num().total_degree() == 1;
    return atom ? s : "(" + s + ")";
}

std::string wrap_exponent(const MultiPoly& e) {
    std::string s = e.to_string();
    bool atom = (e.terms().size() == 1 && e.leading_coefficient() == 1 &&
                 (e.is_constant() || (e.vars().size() == 1 && e.total_degree() == 1))) ||
                (e.is_constant() && e.constant_value() > 0 && den(e.constant_value()) == 1);
    return atom ? s : "(" + s + ")";
}

}  // namespace

std::string HyperTerm::to_string() const {
    std::vector<std::string> parts;
    if (!prefactor_.is_one()) {
        std::string s = prefactor_.to_string();
        if (prefactor_.den().is_one() && prefactor_.num().terms().size() > 1) s = "(" + s + ")";
        parts.push_back(s);
    }
    for (const auto& f : factors_) {
        if (f.exponent.is_constant() && f.exponent.constant_value() == 1)
            parts.push_back(wrap_base(f.base));
        else
            parts.push_back(wrap_base(f.base) + "^" + wrap_exponent(f.exponent));
    }
    if (!exp_arg_.is_zero()) parts.push_back("exp(" + exp_arg_.to_string() + ")");
    if (parts.empty()) return "1";
    std::ostringstream out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out << " * ";
        out << parts[i];
    }
    return out.str();
}

}  // namespace az
