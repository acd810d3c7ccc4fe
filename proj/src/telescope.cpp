#include "az/telescope.hpp"

#include "az/linsolve.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace bmp = boost::multiprecision;

namespace az {

RatFunc telescoper_lhs(const HyperTerm& h, const std::vector<RatFunc>& q) {
    RatFunc sum;
    RatFunc s = RatFunc::constant(1);
    for (size_t k = 0; k < q.size(); ++k) {
        if (k > 0) s *= h.shift_quotient(static_cast<long>(k) - 1);
        sum += q[k] * s;
    }
    return sum;
}

VerifyResult verify_certificate(const HyperTerm& h, const std::vector<RatFunc>& op_coeffs,
                                const RatFunc& certificate) {
    const std::string& x = h.cont_var();
    RatFunc lhs = telescoper_lhs(h, op_coeffs);
    RatFunc rhs = certificate.derivative(x) + certificate * h.log_derivative();
    VerifyResult out;
    out.residual = lhs - rhs;
    out.ok = out.residual.is_zero();
    if (!out.ok && !rhs.is_zero() && !lhs.is_zero()) {
        RatFunc ratio = lhs / rhs;
        if (!ratio.depends_on(x)) out.proportionality = ratio;
    }
    return out;
}

VerifyResult verify_certificate(const HyperTerm& h, const RecOperator& op,
                                const RatFunc& certificate) {
    return verify_certificate(h, op.ratfunc_coefficients(), certificate);
}

namespace {

// One linear solve of the ansatz  sum_k q_k U_k M / E_k = B z' W - B z W' + z A W
// (a polynomial identity in x with coefficients rational in n), with unknowns
// q_0..q_d and the coefficients of z. M = W^2 B / V; the E_k are the x-free
// parts of the S_k denominators, which never enter V.
struct AnsatzResult {
    std::vector<RatFunc> q;
    RatFunc certificate;
    int candidates = 0;
    std::vector<MultiPoly> generic_divisors;
};

// U with an x-free denominator: the value is poly / den.
struct ClearedTerm {
    MultiPoly poly;
    MultiPoly den;
};

std::optional<AnsatzResult> try_ansatz(const HyperTerm& h, int order, int z_degree,
                                       const MultiPoly& W, const MultiPoly& V,
                                       const std::vector<ClearedTerm>& U, DeriveAttempt& attempt) {
    const std::string& x = h.cont_var();
    const std::string& n = h.disc_var();
    const MultiPoly& A = h.log_derivative().num();
    const MultiPoly& B = h.log_derivative().den();

    auto M_opt = (W * W * B).divide_exact(V);
    assert(M_opt);
    const MultiPoly M = *M_opt;
    const MultiPoly Wd = W.derivative(x);
    const MultiPoly AW = A * W;
    const MultiPoly BW = B * W;

    const int nq = order + 1;
    const int nz = z_degree + 1;

    // Column j of the z-block: coefficient polynomial of z_j, i.e.
    // B (j x^{j-1}) W - B x^j W' + x^j A W.
    std::vector<ClearedTerm> zcol(static_cast<size_t>(nz));
    MultiPoly xpow = MultiPoly::constant(1);
    const MultiPoly xv = MultiPoly::variable(x);
    for (int j = 0; j < nz; ++j) {
        MultiPoly g = xpow * AW - xpow * Wd * B;
        if (j > 0) {
            MultiPoly xprev = xpow.divide_exact(xv).value();
            g += BW * xprev.scaled(Rational(j));
        }
        zcol[static_cast<size_t>(j)] = {std::move(g), MultiPoly::constant(1)};
        xpow *= xv;
    }

    std::vector<ClearedTerm> qcol(static_cast<size_t>(nq));
    for (int k = 0; k < nq; ++k)
        qcol[static_cast<size_t>(k)] = {U[static_cast<size_t>(k)].poly * M,
                                        U[static_cast<size_t>(k)].den};

    int max_deg = 0;
    for (const auto& p : qcol) max_deg = std::max(max_deg, p.poly.degree_in(x));
    for (const auto& p : zcol) max_deg = std::max(max_deg, p.poly.degree_in(x));

    // Unknown order z_Dz, ..., z_0, q_0, ..., q_d with rows by descending
    // x-power keeps the system banded, so elimination touches few rows.
    const size_t cols = static_cast<size_t>(nq + nz);
    auto z_col_index = [&](int j) { return static_cast<size_t>(nz - 1 - j); };
    auto q_col_index = [&](int k) { return static_cast<size_t>(nz + k); };

    std::vector<std::vector<RatFunc>> matrix;
    for (int m = max_deg; m >= 0; --m) {
        std::vector<RatFunc> row(cols);
        bool nonzero = false;
        auto put = [&](size_t c, const ClearedTerm& t, bool negate) {
            auto coeffs = t.poly.coefficients_in(x);
            if (m < static_cast<int>(coeffs.size()) && !coeffs[static_cast<size_t>(m)].is_zero()) {
                MultiPoly num = negate ? -coeffs[static_cast<size_t>(m)]
                                       : coeffs[static_cast<size_t>(m)];
                row[c] = RatFunc(std::move(num), t.den);
                nonzero = true;
            }
        };
        for (int j = nz - 1; j >= 0; --j) put(z_col_index(j), zcol[static_cast<size_t>(j)], true);
        for (int k = 0; k < nq; ++k) put(q_col_index(k), qcol[static_cast<size_t>(k)], false);
        if (nonzero) matrix.push_back(std::move(row));
    }

    attempt.unknowns = static_cast<int>(cols);
    attempt.equations = static_cast<int>(matrix.size());

    LinearSolution sol = solve_linear(std::move(matrix), std::vector<RatFunc>(
                                          static_cast<size_t>(attempt.equations), RatFunc()));
    assert(sol.consistent);

    // Pick, among null-space members with a nontrivial operator part, the one
    // with the fewest nonzero q entries (first on ties).
    const std::vector<RatFunc>* best = nullptr;
    int best_count = 0;
    int candidates = 0;
    for (const auto& basis : sol.nullspace) {
        int count = 0;
        for (int k = 0; k < nq; ++k)
            if (!basis[q_col_index(k)].is_zero()) ++count;
        if (count == 0) continue;
        ++candidates;
        if (!best || count < best_count) {
            best = &basis;
            best_count = count;
        }
    }
    attempt.candidates = candidates;
    if (!best) return std::nullopt;

    AnsatzResult out;
    out.candidates = candidates;

    // Parameter-only divisors inverted while eliminating: a pivot restricts
    // the parameters only where it vanishes identically as a polynomial in
    // n, i.e. on common roots of its n-coefficients.
    for (const auto& piv : sol.pivot_numerators) {
        if (piv.is_constant()) continue;
        MultiPoly cont;
        bool first = true;
        for (const auto& c : piv.coefficients_in(n)) {
            if (c.is_zero()) continue;
            cont = first ? MultiPoly::gcd(c, MultiPoly()) : MultiPoly::gcd(cont, c);
            first = false;
        }
        if (cont.is_constant()) continue;
        if (cont.leading_coefficient() < 0) cont = -cont;
        cont = cont.scaled(Rational(1) / cont.content());
        if (std::find(out.generic_divisors.begin(), out.generic_divisors.end(), cont) ==
            out.generic_divisors.end())
            out.generic_divisors.push_back(cont);
    }
    out.q.clear();
    for (int k = 0; k < nq; ++k) out.q.push_back((*best)[q_col_index(k)]);

    // Assemble z over one common denominator so the certificate costs a
    // single reduction rather than one per coefficient.
    MultiPoly z_den = MultiPoly::constant(1);
    for (int j = 0; j < nz; ++j) {
        const RatFunc& c = (*best)[z_col_index(j)];
        if (!c.den().is_one()) z_den = MultiPoly::lcm(z_den, c.den());
    }
    MultiPoly z_num;
    MultiPoly xpow2 = MultiPoly::constant(1);
    for (int j = 0; j < nz; ++j) {
        const RatFunc& c = (*best)[z_col_index(j)];
        if (!c.is_zero()) z_num += c.num() * *z_den.divide_exact(c.den()) * xpow2;
        xpow2 *= xv;
    }
    out.certificate = RatFunc(std::move(z_num), z_den * W);
    return out;
}

}  // namespace

AZResult az_derive(const HyperTerm& h, const DeriveConfig& config) {
    const std::string& x = h.cont_var();
    const std::string& n = h.disc_var();
    const MultiPoly& A = h.log_derivative().num();
    const MultiPoly& B = h.log_derivative().den();
    const int degA = std::max(A.degree_in(x), 0);
    const int degB = std::max(B.degree_in(x), 0);

    DeriveStats stats;

    std::vector<RatFunc> S{RatFunc::constant(1)};
    for (int d = 0; d <= config.max_order; ++d) {
        if (d > 0) S.push_back(S.back() * h.shift_quotient(d - 1));

        // Split each S_k denominator into the part that involves x (cleared
        // into V) and the x-free remainder (kept as a rational coefficient).
        std::vector<MultiPoly> xparts, nparts;
        for (const auto& s : S) {
            MultiPoly cont;
            bool first = true;
            for (const auto& c : s.den().coefficients_in(x)) {
                if (c.is_zero()) continue;
                cont = first ? MultiPoly::gcd(c, MultiPoly()) : MultiPoly::gcd(cont, c);
                first = false;
            }
            MultiPoly xpart = *s.den().divide_exact(cont);
            xparts.push_back(std::move(xpart));
            nparts.push_back(std::move(cont));
        }
        MultiPoly V = MultiPoly::constant(1);
        for (const auto& p : xparts) V = MultiPoly::lcm(V, p);
        std::vector<ClearedTerm> U;
        for (size_t k = 0; k < S.size(); ++k) {
            auto q = V.divide_exact(xparts[k]);
            U.push_back({S[k].num() * *q, nparts[k]});
        }

        const int boosts = config.denominator_boost && !V.is_one() ? 1 : 0;
        for (int boost = 0; boost <= boosts; ++boost) {
            MultiPoly W = B * V;
            if (boost) W = W * V;
            const int base_bound = W.degree_in(x) + std::max(degA, degB) + d + 2;
            for (int raise = 0; raise <= config.degree_raises; ++raise) {
                DeriveAttempt attempt;
                attempt.order = d;
                attempt.degree_bound = base_bound + raise * config.degree_step;
                attempt.boosted = boost > 0;
                auto found = try_ansatz(h, d, attempt.degree_bound, W, V, U, attempt);
                stats.attempts.push_back(attempt);
                if (!found) continue;
                stats.generic_divisors = found->generic_divisors;

                // Normalize: clear denominators in n, divide by the joint
                // content, make the leading coefficient of p_d positive, and
                // scale the certificate by the same x-free factor.
                std::vector<RatFunc> q = found->q;
                while (q.size() > 1 && q.back().is_zero()) q.pop_back();
                MultiPoly lcd = MultiPoly::constant(1);
                for (const auto& c : q) lcd = MultiPoly::lcm(lcd, c.den());
                std::vector<MultiPoly> p;
                for (const auto& c : q) {
                    auto m = lcd.divide_exact(c.den());
                    p.push_back(c.num() * *m);
                }
                Rational content = 0;
                for (const auto& pk : p) content = rational_gcd(content, pk.content());
                if (p.back().leading_coefficient() < 0) content = -content;
                for (auto& pk : p) pk = pk.scaled(Rational(1) / content);

                RatFunc scale = RatFunc(lcd) / RatFunc::constant(content);
                RatFunc certificate = found->certificate * scale;

                RecOperator op(p, n, /*normalize=*/false);
                VerifyResult check = verify_certificate(h, op, certificate);
                if (!check.ok)
                    throw MathError("internal error: derived pair failed verification");
                return AZResult{std::move(op), std::move(certificate), std::move(stats)};
            }
        }
    }

    std::ostringstream msg;
    msg << "no telescoper found up to order " << config.max_order << " (" << stats.attempts.size()
        << " ansatz attempts)";
    throw NotFoundError(msg.str(), std::move(stats));
}

EndpointReport endpoint_report(const HyperTerm& h, const RatFunc& certificate,
                               const Interval& interval, const std::vector<long>& sample_n,
                               const Real& tol,
                               const std::map<std::string, Rational>& param_values) {
    const std::string& xv = h.cont_var();
    const std::string& nv = h.disc_var();

    struct Approach {
        std::string label;
        std::vector<Real> xs;
    };
    std::vector<Approach> approaches;

    auto geometric = [](const Real& from, const Real& step0, int count) {
        std::vector<Real> xs;
        Real step = step0;
        for (int k = 0; k < count; ++k) {
            xs.push_back(from + step);
            step /= 2;
        }
        return xs;
    };
    auto infinite = [](int sign) {
        std::vector<Real> xs;
        Real x = 10;
        for (int k = 0; k < 6; ++k) {
            xs.push_back(sign * x);
            x *= 10;
        }
        return xs;
    };
    auto label_of = [](const Rational& a) {
        return num(a).str() + (den(a) == 1 ? "" : "/" + den(a).str());
    };

    switch (interval.kind) {
        case Interval::Kind::Finite: {
            Real width = to_real(interval.b - interval.a);
            approaches.push_back({label_of(interval.a), geometric(to_real(interval.a), width / 4, 20)});
            approaches.push_back({label_of(interval.b), geometric(to_real(interval.b), -width / 4, 20)});
            break;
        }
        case Interval::Kind::LeftFinite:
            approaches.push_back({label_of(interval.a), geometric(to_real(interval.a), 1, 20)});
            approaches.push_back({"inf", infinite(+1)});
            break;
        case Interval::Kind::FullLine:
            approaches.push_back({"-inf", infinite(-1)});
            approaches.push_back({"inf", infinite(+1)});
            break;
    }

    std::map<std::string, Real> real_params;
    for (const auto& [k, v] : param_values) real_params[k] = to_real(v);

    EndpointReport report;
    for (long n : sample_n) {
        for (const auto& side : approaches) {
            EndpointSide s;
            s.endpoint = side.label;
            s.n = n;
            for (const Real& xval : side.xs) {
                EndpointPoint pt;
                pt.x = xval;
                try {
                    std::map<std::string, Real> point = real_params;
                    point[xv] = xval;
                    point[nv] = Real(n);
                    Real rv = certificate.evaluate_real(point);
                    pt.value = rv * h.evaluate(n, xval, param_values);
                } catch (const MathError&) {
                    s.had_pole = true;
                }
                s.path.push_back(std::move(pt));
            }
            // Aitken extrapolation on the last valid triple; geometric
            // approach paths make a converging tail geometric, for which
            // this is exact. A diverging tail (growing differences) is left
            // unextrapolated, since Aitken would map it to its repelling
            // fixed point and mask the blow-up.
            std::vector<Real> tail;
            for (const auto& pt : s.path) {
                if (pt.value)
                    tail.push_back(*pt.value);
                else
                    tail.clear();
            }
            if (tail.size() >= 3) {
                Real v2 = tail[tail.size() - 1], v1 = tail[tail.size() - 2],
                     v0 = tail[tail.size() - 3];
                Real d1 = v1 - v0, d2 = v2 - v1;
                Real dd = d2 - d1;
                Real scale = bmp::fabs(v2) + bmp::fabs(v1) + bmp::fabs(v0);
                if (bmp::fabs(d2) <= bmp::fabs(d1) && bmp::fabs(dd) > scale * Real("1e-30"))
                    s.limit_estimate = v2 - d2 * d2 / dd;
                else
                    s.limit_estimate = v2;
            } else if (!tail.empty()) {
                s.limit_estimate = tail.back();
            }
            s.vanishes = s.limit_estimate && bmp::fabs(*s.limit_estimate) <= tol;
            report.sides.push_back(std::move(s));
        }
    }
    return report;
}

}  // namespace az
