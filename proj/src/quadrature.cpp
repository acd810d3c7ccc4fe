#include "az/quadrature.hpp"

#include <array>

namespace bmp = boost::multiprecision;

namespace az {

Interval Interval::finite(const Rational& a, const Rational& b) {
    if (!(a < b)) throw MathError("interval endpoints must satisfy a < b");
    Interval iv;
    iv.kind = Kind::Finite;
    iv.a = a;
    iv.b = b;
    return iv;
}

Interval Interval::left_finite(const Rational& a) {
    Interval iv;
    iv.kind = Kind::LeftFinite;
    iv.a = a;
    iv.b = 0;
    return iv;
}

Interval Interval::full_line() {
    Interval iv;
    iv.kind = Kind::FullLine;
    return iv;
}

Interval Interval::parse(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw MathError("interval must be 'a,b', 'a,inf' or '-inf,inf': " + text);
    std::string left = text.substr(0, comma);
    std::string right = text.substr(comma + 1);
    auto strip = [](std::string s) {
        size_t b = s.find_first_not_of(" \t");
        size_t e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    left = strip(left);
    right = strip(right);
    bool right_inf = right == "inf" || right == "+inf" || right == "oo";
    if (left == "-inf") {
        if (!right_inf) throw MathError("left endpoint -inf requires right endpoint inf");
        return full_line();
    }
    Rational a = rational_from_string(left);
    if (right_inf) return left_finite(a);
    return finite(a, rational_from_string(right));
}

std::string Interval::to_string() const {
    switch (kind) {
        case Kind::Finite: return num(a).str() + (den(a) == 1 ? "" : "/" + den(a).str()) + "," +
                                  num(b).str() + (den(b) == 1 ? "" : "/" + den(b).str());
        case Kind::LeftFinite: return num(a).str() + (den(a) == 1 ? "" : "/" + den(a).str()) + ",inf";
        case Kind::FullLine: return "-inf,inf";
    }
    return "";
}

Real Transform::x(const Real& t) const {
    switch (kind) {
        case Interval::Kind::Finite: return a + width * t;
        case Interval::Kind::LeftFinite: return a + t / (1 - t);
        case Interval::Kind::FullLine: return t / (1 - t * t);
    }
    return 0;
}

Real Transform::jacobian(const Real& t) const {
    switch (kind) {
        case Interval::Kind::Finite: return width;
        case Interval::Kind::LeftFinite: {
            Real d = 1 - t;
            return 1 / (d * d);
        }
        case Interval::Kind::FullLine: {
            Real d = 1 - t * t;
            return (1 + t * t) / (d * d);
        }
    }
    return 0;
}

Transform transform(const Interval& interval) {
    Transform tr;
    tr.kind = interval.kind;
    switch (interval.kind) {
        case Interval::Kind::Finite:
            tr.a = to_real(interval.a);
            tr.width = to_real(interval.b - interval.a);
            tr.lo = 0;
            tr.hi = 1;
            break;
        case Interval::Kind::LeftFinite:
            tr.a = to_real(interval.a);
            tr.lo = 0;
            tr.hi = 1;
            break;
        case Interval::Kind::FullLine:
            tr.lo = -1;
            tr.hi = 1;
            break;
    }
    return tr;
}

namespace {

constexpr int kRuleOrder = 15;

struct GaussRule {
    std::array<Real, kRuleOrder> node;    // on (-1, 1)
    std::array<Real, kRuleOrder> weight;
};

// Gauss-Legendre nodes by Newton iteration on P_15; computed once.
const GaussRule& gauss_rule() {
    static const GaussRule rule = [] {
        GaussRule r;
        const int n = kRuleOrder;
        const Real pi = bmp::acos(Real(-1));
        for (int i = 0; i < (n + 1) / 2; ++i) {
            Real x = bmp::cos(pi * (Real(i) + Real(3) / 4) / (Real(n) + Real(1) / 2));
            Real dp = 0;
            for (int it = 0; it < 200; ++it) {
                // evaluate P_n and P_n' by the three-term recurrence
                Real p0 = 1, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1);
                Real dx = p1 / dp;
                x -= dx;
                if (bmp::fabs(dx) < Real("1e-60")) break;
            }
            r.node[static_cast<size_t>(i)] = -x;
            r.node[static_cast<size_t>(n - 1 - i)] = x;
            Real w = 2 / ((1 - x * x) * dp * dp);
            r.weight[static_cast<size_t>(i)] = w;
            r.weight[static_cast<size_t>(n - 1 - i)] = w;
        }
        return r;
    }();
    return rule;
}

struct Worker {
    const std::function<Real(const Real&)>& f;
    Real tol;
    Real domain_width;
    int max_depth;
    unsigned long evaluations = 0;
    int deepest = 0;

    Real panel(const Real& lo, const Real& hi) {
        const GaussRule& rule = gauss_rule();
        Real mid = (lo + hi) / 2, half = (hi - lo) / 2;
        Real sum = 0;
        for (int i = 0; i < kRuleOrder; ++i) {
            sum += rule.weight[static_cast<size_t>(i)] * f(mid + half * rule.node[static_cast<size_t>(i)]);
            ++evaluations;
        }
        return sum * half;
    }

    std::pair<Real, Real> refine(const Real& lo, const Real& hi, const Real& whole, int depth) {
        if (depth > deepest) deepest = depth;
        Real mid = (lo + hi) / 2;
        Real left = panel(lo, mid);
        Real right = panel(mid, hi);
        Real err = bmp::fabs(left + right - whole);
        if (err <= tol * (hi - lo) / domain_width)
            return {left + right, err};
        if (depth >= max_depth)
            throw NonConvergence("quadrature did not converge after " + std::to_string(max_depth) +
                                 " bisections");
        auto [lv, le] = refine(lo, mid, left, depth + 1);
        auto [rv, re] = refine(mid, hi, right, depth + 1);
        return {lv + rv, le + re};
    }
};

}  // namespace

QuadResult integrate(const std::function<Real(const Real&)>& f, const Transform& tr,
                     const QuadConfig& config) {
    if (config.tol <= 0) throw MathError("quadrature tolerance must be positive");
    Worker w{f, config.tol, tr.hi - tr.lo, config.max_depth};
    Real whole = w.panel(tr.lo, tr.hi);
    auto [value, err] = w.refine(tr.lo, tr.hi, whole, 1);
    QuadResult out;
    out.value = value;
    out.error_estimate = err;
    out.evaluations = w.evaluations;
    out.max_depth = w.deepest;
    return out;
}

QuadResult integrate(const HyperTerm& h, long n, const Interval& interval,
                     const std::map<std::string, Rational>& param_values,
                     const QuadConfig& config) {
    Transform tr = transform(interval);
    auto f = [&](const Real& t) { return h.evaluate(n, tr.x(t), param_values) * tr.jacobian(t); };
    return integrate(f, tr, config);
}

}  // namespace az
