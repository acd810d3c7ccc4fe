#include "az/multipoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace az {

namespace {

std::uint32_t total(const MultiPoly::Monomial& m) {
    std::uint32_t t = 0;
    for (auto e : m) t += e;
    return t;
}

}  // namespace

bool MultiPoly::GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    std::uint32_t ta = total(a), tb = total(b);
    if (ta != tb) return ta < tb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly MultiPoly::constant(const Rational& c) {
    MultiPoly p;
    if (c != 0) p.terms_[Monomial{}] = c;
    return p;
}

MultiPoly MultiPoly::variable(const std::string& name) {
    MultiPoly p;
    p.vars_ = {name};
    p.terms_[Monomial{1}] = 1;
    return p;
}

MultiPoly MultiPoly::from_terms(std::vector<std::string> vars, TermMap terms) {
    MultiPoly p;
    p.vars_ = std::move(vars);
    p.terms_ = std::move(terms);
    p.compress();
    return p;
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return 0;
    return terms_.begin()->second;
}

bool MultiPoly::depends_on(const std::string& var) const {
    return std::find(vars_.begin(), vars_.end(), var) != vars_.end();
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total(terms_.rbegin()->first));
}

int MultiPoly::degree_in(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return terms_.empty() ? -1 : 0;
    size_t idx = static_cast<size_t>(it - vars_.begin());
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[idx]));
    return d;
}

Rational MultiPoly::leading_coefficient() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->second;
}

Rational MultiPoly::content() const {
    Rational g = 0;
    for (const auto& [m, c] : terms_) g = rational_gcd(g, c);
    return g;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

void MultiPoly::insert_term(const Monomial& m, const Rational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::compress() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
    if (vars_.empty()) return;
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [m, c] : terms_)
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) used[i] = true;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
    std::vector<std::string> nv;
    std::vector<size_t> keep;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) {
            nv.push_back(vars_[i]);
            keep.push_back(i);
        }
    TermMap nt;
    for (const auto& [m, c] : terms_) {
        Monomial mm(keep.size());
        for (size_t i = 0; i < keep.size(); ++i) mm[i] = m[keep[i]];
        nt[mm] = c;
    }
    vars_ = std::move(nv);
    terms_ = std::move(nt);
}

MultiPoly::TermMap MultiPoly::remap(const TermMap& terms, const std::vector<std::string>& from,
                                    const std::vector<std::string>& to) {
    std::vector<size_t> pos(from.size());
    for (size_t i = 0; i < from.size(); ++i) {
        auto it = std::lower_bound(to.begin(), to.end(), from[i]);
        assert(it != to.end() && *it == from[i]);
        pos[i] = static_cast<size_t>(it - to.begin());
    }
    TermMap out;
    for (const auto& [m, c] : terms) {
        Monomial mm(to.size(), 0);
        for (size_t i = 0; i < m.size(); ++i) mm[pos[i]] = m[i];
        out[mm] = c;
    }
    return out;
}

void MultiPoly::align(const MultiPoly& a, const MultiPoly& b, std::vector<std::string>& vars,
                      TermMap& ta, TermMap& tb) {
    vars.clear();
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                   std::back_inserter(vars));
    ta = remap(a.terms_, a.vars_, vars);
    tb = remap(b.terms_, b.vars_, vars);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (vars_ == o.vars_) {
        for (const auto& [m, c] : o.terms_) insert_term(m, c);
        compress();
        return *this;
    }
    std::vector<std::string> vars;
    TermMap ta, tb;
    align(*this, o, vars, ta, tb);
    vars_ = std::move(vars);
    terms_ = std::move(ta);
    for (const auto& [m, c] : tb) insert_term(m, c);
    compress();
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return MultiPoly();
    std::vector<std::string> vars;
    MultiPoly::TermMap ta, tb;
    MultiPoly::align(a, b, vars, ta, tb);
    MultiPoly::TermMap out;
    for (const auto& [ma, ca] : ta)
        for (const auto& [mb, cb] : tb) {
            MultiPoly::Monomial m(vars.size());
            for (size_t i = 0; i < vars.size(); ++i) m[i] = ma[i] + mb[i];
            auto it = out.find(m);
            if (it == out.end())
                out.emplace(std::move(m), ca * cb);
            else
                it->second += ca * cb;
        }
    return MultiPoly::from_terms(std::move(vars), std::move(out));
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    if (c == 0) return MultiPoly();
    MultiPoly p = *this;
    for (auto& [m, coef] : p.terms_) coef *= c;
    return p;
}

MultiPoly operator*(const MultiPoly& p, const Rational& c) { return p.scaled(c); }
MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p.scaled(c); }

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(1);
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return MultiPoly();
    size_t idx = static_cast<size_t>(it - vars_.begin());
    MultiPoly out;
    out.vars_ = vars_;
    for (const auto& [m, c] : terms_) {
        if (m[idx] == 0) continue;
        Monomial mm = m;
        mm[idx] -= 1;
        out.insert_term(mm, c * Rational(m[idx]));
    }
    out.compress();
    return out;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(const std::string& var) const {
    int d = degree_in(var);
    if (d < 0) d = 0;
    std::vector<MultiPoly> out(static_cast<size_t>(d) + 1);
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) {
        out[0] = *this;
        return out;
    }
    size_t idx = static_cast<size_t>(it - vars_.begin());
    for (const auto& [m, c] : terms_) {
        Monomial mm = m;
        std::uint32_t p = mm[idx];
        mm[idx] = 0;
        out[p].vars_ = vars_;
        out[p].insert_term(mm, c);
    }
    for (auto& coeff : out) coeff.compress();
    return out;
}

MultiPoly MultiPoly::assemble_in(const std::string& var, const std::vector<MultiPoly>& coeffs) {
    MultiPoly x = variable(var);
    MultiPoly acc;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

MultiPoly MultiPoly::substitute(const std::string& var, const MultiPoly& value) const {
    if (!depends_on(var)) return *this;
    std::vector<MultiPoly> coeffs = coefficients_in(var);
    MultiPoly acc;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * value + coeffs[i];
    return acc;
}

MultiPoly MultiPoly::shifted(const std::string& var, long k) const {
    if (k == 0 || !depends_on(var)) return *this;
    return substitute(var, variable(var) + constant(Rational(k)));
}

Rational MultiPoly::evaluate(const std::map<std::string, Rational>& point) const {
    std::vector<Rational> vals(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = point.find(vars_[i]);
        if (it == point.end()) throw MathError("no value supplied for variable " + vars_[i]);
        vals[i] = it->second;
    }
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) t *= vals[i];
        acc += t;
    }
    return acc;
}

Real MultiPoly::evaluate_real(const std::map<std::string, Real>& point) const {
    std::vector<Real> vals(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = point.find(vars_[i]);
        if (it == point.end()) throw MathError("no value supplied for variable " + vars_[i]);
        vals[i] = it->second;
    }
    Real acc = 0;
    for (const auto& [m, c] : terms_) {
        Real t = to_real(c);
        for (size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) t *= vals[i];
        acc += t;
    }
    return acc;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& divisor) const {
    if (divisor.is_zero()) throw ZeroDenominator("polynomial division by zero");
    if (is_zero()) return MultiPoly();
    if (divisor.is_constant()) return scaled(Rational(1) / divisor.constant_value());

    std::vector<std::string> vars;
    TermMap tp, tq;
    align(*this, divisor, vars, tp, tq);

    const Monomial& ltq = tq.rbegin()->first;
    const Rational& lcq = tq.rbegin()->second;

    MultiPoly rem;
    rem.vars_ = vars;
    rem.terms_ = std::move(tp);
    MultiPoly quo;
    quo.vars_ = vars;

    while (!rem.terms_.empty()) {
        const Monomial& ltp = rem.terms_.rbegin()->first;
        Monomial diff(vars.size());
        bool divisible = true;
        for (size_t i = 0; i < vars.size(); ++i) {
            if (ltp[i] < ltq[i]) {
                divisible = false;
                break;
            }
            diff[i] = ltp[i] - ltq[i];
        }
        if (!divisible) return std::nullopt;
        Rational coef = rem.terms_.rbegin()->second / lcq;
        quo.insert_term(diff, coef);
        for (const auto& [m, c] : tq) {
            Monomial mm(vars.size());
            for (size_t i = 0; i < vars.size(); ++i) mm[i] = m[i] + diff[i];
            rem.insert_term(mm, -coef * c);
        }
    }
    quo.compress();
    return quo;
}

namespace {

// Univariate view in a main variable with MultiPoly coefficients,
// ascending by power; used by the subresultant PRS.
using Dense = std::vector<MultiPoly>;

void trim(Dense& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const Dense& p) { return static_cast<int>(p.size()) - 1; }

Dense scale_coeffs(const Dense& p, const MultiPoly& f) {
    Dense out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(c * f);
    return out;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b in the main variable.
Dense prem(Dense a, const Dense& b) {
    int da = deg(a), db = deg(b);
    const MultiPoly& lb = b.back();
    int e = da - db + 1;
    while (!a.empty() && deg(a) >= db) {
        MultiPoly la = a.back();
        int shift = deg(a) - db;
        Dense next(static_cast<size_t>(deg(a)), MultiPoly());
        for (int i = 0; i < deg(a); ++i) {
            MultiPoly t = a[static_cast<size_t>(i)] * lb;
            if (i - shift >= 0 && i - shift < db) t -= la * b[static_cast<size_t>(i - shift)];
            next[static_cast<size_t>(i)] = std::move(t);
        }
        a = std::move(next);
        trim(a);
        --e;
    }
    MultiPoly f = MultiPoly::constant(1);
    for (int i = 0; i < e; ++i) f *= lb;
    return scale_coeffs(a, f);
}

Dense divide_coeffs(const Dense& p, const MultiPoly& d) {
    Dense out;
    out.reserve(p.size());
    for (const auto& c : p) {
        auto q = c.divide_exact(d);
        assert(q.has_value());
        out.push_back(std::move(*q));
    }
    return out;
}

}  // namespace

MultiPoly MultiPoly::gcd(const MultiPoly& p, const MultiPoly& q) {
    if (p.is_zero() && q.is_zero()) throw MathError("gcd(0, 0) is undefined");
    auto normalized = [](const MultiPoly& r) {
        Rational c = r.content();
        MultiPoly pp = r.scaled(Rational(1) / c);
        if (pp.leading_coefficient() < 0) pp = -pp;
        return pp.scaled(c);
    };
    if (p.is_zero()) return normalized(q);
    if (q.is_zero()) return normalized(p);

    Rational cg = rational_gcd(p.content(), q.content());
    MultiPoly a = p.scaled(Rational(1) / p.content());
    MultiPoly b = q.scaled(Rational(1) / q.content());
    if (a.is_constant() || b.is_constant()) return constant(cg);

    std::vector<std::string> vars;
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                   std::back_inserter(vars));

    // Multivariate case: probe with a univariate image first. If the image
    // gcd in the busiest variable is constant (and the leading coefficients
    // survived the evaluation), the true gcd is free of that variable and
    // reduces to a gcd of coefficient contents, skipping the expensive PRS.
    if (vars.size() >= 2) {
        std::string probe;
        int best_deg = -1;
        for (const auto& v : vars) {
            int d = std::min(a.degree_in(v), b.degree_in(v));
            if (d > best_deg) {
                best_deg = d;
                probe = v;
            }
        }
        auto content_wrt = [&](const MultiPoly& r) {
            MultiPoly cont;
            bool first = true;
            for (const auto& c : r.coefficients_in(probe)) {
                if (c.is_zero()) continue;
                cont = first ? gcd(c, MultiPoly()) : gcd(cont, c);
                first = false;
            }
            return cont;
        };
        for (int attempt = 0; attempt < 3; ++attempt) {
            MultiPoly ia = a, ib = b;
            for (size_t i = 0; i < vars.size(); ++i) {
                if (vars[i] == probe) continue;
                Rational point(17 + 13 * static_cast<long>(i) + 5 * attempt);
                ia = ia.substitute(vars[i], constant(point));
                ib = ib.substitute(vars[i], constant(point));
            }
            if (ia.degree_in(probe) != a.degree_in(probe) ||
                ib.degree_in(probe) != b.degree_in(probe))
                continue;  // a leading coefficient vanished; try another point
            if (ia.is_zero() || ib.is_zero()) continue;
            MultiPoly img = gcd(ia, ib);
            if (img.degree_in(probe) > 0) break;  // genuine common factor: run the PRS
            MultiPoly result = gcd(content_wrt(a), content_wrt(b));
            Rational rc0 = result.content();
            MultiPoly pp0 = result.scaled(Rational(1) / rc0);
            if (pp0.leading_coefficient() < 0) pp0 = -pp0;
            return pp0.scaled(rc0 * cg);
        }
    }

    // Main variable: first of the union; both primitive parts and the PRS
    // run over the remaining variables recursively.
    const std::string& main = vars.front();

    auto split = [&main](const MultiPoly& r) {
        Dense coeffs;
        for (auto& c : r.coefficients_in(main)) coeffs.push_back(std::move(c));
        trim(coeffs);
        MultiPoly cont;
        bool first = true;
        for (const auto& c : coeffs) {
            if (c.is_zero()) continue;
            cont = first ? MultiPoly::gcd(c, MultiPoly()) : MultiPoly::gcd(cont, c);
            first = false;
        }
        return std::make_pair(divide_coeffs(coeffs, cont), cont);
    };

    auto [da, conta] = split(a);
    auto [db, contb] = split(b);
    MultiPoly cont_gcd = MultiPoly::gcd(conta, contb);

    if (deg(da) < deg(db)) std::swap(da, db);

    // Subresultant PRS (Brown/Traub); divisions below are exact.
    MultiPoly g = constant(1), h = constant(1);
    MultiPoly result;
    while (true) {
        int delta = deg(da) - deg(db);
        Dense r = prem(da, db);
        if (r.empty()) {
            // primitive part of db
            MultiPoly cont;
            bool first = true;
            for (const auto& c : db) {
                if (c.is_zero()) continue;
                cont = first ? MultiPoly::gcd(c, MultiPoly()) : MultiPoly::gcd(cont, c);
                first = false;
            }
            Dense pp = divide_coeffs(db, cont);
            result = assemble_in(main, pp);
            break;
        }
        if (deg(r) == 0) {
            result = constant(1);
            break;
        }
        MultiPoly divisor = g * h.pow(static_cast<unsigned>(delta));
        da = std::move(db);
        db = divide_coeffs(r, divisor);
        g = da.back();
        if (delta >= 1) {
            MultiPoly gd = g.pow(static_cast<unsigned>(delta));
            if (delta == 1) {
                h = gd;
            } else {
                auto hq = gd.divide_exact(h.pow(static_cast<unsigned>(delta - 1)));
                assert(hq.has_value());
                h = *hq;
            }
        }
    }

    result = result * cont_gcd;
    Rational rc = result.content();
    MultiPoly pp = result.scaled(Rational(1) / rc);
    if (pp.leading_coefficient() < 0) pp = -pp;
    return pp.scaled(rc * cg);
}

MultiPoly MultiPoly::lcm(const MultiPoly& p, const MultiPoly& q) {
    if (p.is_zero() || q.is_zero()) throw MathError("lcm with zero polynomial");
    MultiPoly g = gcd(p, q);
    auto quotient = p.divide_exact(g);
    assert(quotient.has_value());
    MultiPoly l = *quotient * q;
    if (l.leading_coefficient() < 0) l = -l;
    return l;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        std::string mono;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty()) {
            out << a.str();
        } else if (a == 1) {
            out << mono;
        } else {
            out << a.str() << "*" << mono;
        }
        first = false;
    }
    return out.str();
}

}  // namespace az
