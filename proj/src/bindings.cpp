#include "az/irrationality.hpp"
#include "az/recurrence.hpp"
#include "az/telescope.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

az::HyperTerm make_term(const std::string& expr, const std::string& var, const std::string& disc,
                        const std::vector<std::string>& params) {
    return az::HyperTerm::parse(expr, var, disc, params);
}

py::dict derive(const std::string& expr, const std::vector<std::string>& params, int max_order,
                const std::string& var, const std::string& disc) {
    az::HyperTerm h = make_term(expr, var, disc, params);
    az::DeriveConfig config;
    config.max_order = max_order;
    az::AZResult result = az::az_derive(h, config);
    py::dict out;
    out["operator"] = result.op.to_string();
    out["certificate"] = result.certificate.to_string();
    out["order"] = result.op.order();
    py::list generic;
    for (const auto& g : result.stats.generic_divisors) generic.append(g.to_string());
    out["generic_divisors"] = generic;
    out["attempts"] = result.stats.attempts.size();
    return out;
}

py::dict verify(const std::string& expr, const std::string& op_text, const std::string& cert_text,
                const std::vector<std::string>& params, const std::string& var,
                const std::string& disc) {
    az::HyperTerm h = make_term(expr, var, disc, params);
    auto coeffs = az::RecOperator::parse_coefficients(op_text, disc, params);
    std::set<std::string> allowed{var, disc};
    allowed.insert(params.begin(), params.end());
    az::RatFunc cert = az::parse_ratfunc(cert_text, allowed);
    az::VerifyResult res = az::verify_certificate(h, coeffs, cert);
    py::dict out;
    out["ok"] = res.ok;
    out["residual"] = res.residual.to_string();
    if (res.proportionality) out["proportionality"] = res.proportionality->to_string();
    return out;
}

py::list unroll_terms(const std::string& op_text, const std::vector<std::string>& initials,
                      long start, int count, const std::string& disc) {
    az::RecOperator op = az::RecOperator::parse(op_text, disc);
    std::vector<az::ExactNumber> init;
    for (const auto& text : initials) init.push_back(az::ExactNumber::parse(text));
    az::SequenceTable table = az::unroll(op, init, start, count);
    py::list out;
    for (const auto& v : table.values) out.append(v.to_string());
    return out;
}

bool checksol(const std::string& op_text, const std::string& ratio_text,
              const std::vector<std::string>& params, const std::string& disc) {
    az::RecOperator op = az::RecOperator::parse(op_text, disc, params);
    std::set<std::string> allowed{disc};
    allowed.insert(params.begin(), params.end());
    return az::check_solution(op, az::parse_ratfunc(ratio_text, allowed));
}

py::dict quad(const std::string& expr, long n, const std::string& interval_text,
              const std::string& tol, const std::string& var, const std::string& disc) {
    az::HyperTerm h = make_term(expr, var, disc, {});
    az::QuadConfig config;
    config.tol = az::Real(tol);
    az::QuadResult res = az::integrate(h, n, az::Interval::parse(interval_text), {}, config);
    py::dict out;
    out["value"] = static_cast<double>(res.value);
    out["value_str"] = res.value.str(30, std::ios_base::scientific);
    out["error_estimate"] = static_cast<double>(res.error_estimate);
    out["evaluations"] = res.evaluations;
    return out;
}

py::dict analyze_e(int count, int precision) {
    az::HyperTerm h = az::HyperTerm::parse("(x*(1-x))^n * exp(-x)");
    az::AZResult derived = az::az_derive(h);
    auto records = az::approximation_report(derived.op, {-1, 14}, {3, -38}, 1, count, precision);
    az::CertifiedRational einv = az::constant_inv_e(precision);
    auto criterion = az::irrationality_criterion_check(records, einv, 1, 1);
    az::PoincareReport poincare = az::poincare_leading(derived.op);

    py::dict out;
    out["operator"] = derived.op.to_string();
    out["certificate"] = derived.certificate.to_string();
    out["inv_e"] = az::decimal_string(einv.value, precision);
    py::list rows;
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        py::dict row;
        row["n"] = r.n;
        row["a"] = r.a.str();
        row["b"] = r.b.str();
        row["gcd"] = r.g.str();
        row["p"] = r.p.str();
        row["q"] = r.q.str();
        row["decay_ok"] = r.decay_ok;
        row["exponent_estimate"] = r.exponent_estimate;
        row["criterion_holds"] = criterion[i].holds;
        rows.append(row);
    }
    out["records"] = rows;
    out["q_top"] = poincare.q_top.to_string();
    py::list roots;
    for (const auto& r : poincare.rational_roots) roots.append(r.str());
    out["q_top_roots"] = roots;
    out["degenerate"] = poincare.degenerate;
    return out;
}

std::string normalize(const std::string& num_text, const std::string& den_text,
                      const std::vector<std::string>& vars) {
    std::set<std::string> allowed(vars.begin(), vars.end());
    az::RatFunc f = az::parse_ratfunc(num_text, allowed) / az::parse_ratfunc(den_text, allowed);
    return f.to_string();
}

std::string poly_gcd(const std::string& a, const std::string& b,
                     const std::vector<std::string>& vars) {
    std::set<std::string> allowed(vars.begin(), vars.end());
    az::RatFunc fa = az::parse_ratfunc(a, allowed);
    az::RatFunc fb = az::parse_ratfunc(b, allowed);
    if (!fa.den().is_one() || !fb.den().is_one())
        throw az::MathError("gcd expects polynomial inputs");
    return az::MultiPoly::gcd(fa.num(), fb.num()).to_string();
}

std::string derivative(const std::string& text, const std::string& var,
                       const std::vector<std::string>& vars) {
    std::set<std::string> allowed(vars.begin(), vars.end());
    allowed.insert(var);
    return az::parse_ratfunc(text, allowed).derivative(var).to_string();
}

std::string shift(const std::string& text, const std::string& var, long k,
                  const std::vector<std::string>& vars) {
    std::set<std::string> allowed(vars.begin(), vars.end());
    allowed.insert(var);
    return az::parse_ratfunc(text, allowed).shifted(var, k).to_string();
}

bool op_equivalent(const std::string& a, const std::string& b,
                   const std::vector<std::string>& params, const std::string& disc) {
    return az::operator_equivalent(az::RecOperator::parse(a, disc, params),
                                   az::RecOperator::parse(b, disc, params));
}

py::dict inv_e(int digits) {
    az::CertifiedRational v = az::constant_inv_e(digits);
    py::dict out;
    out["value"] = az::num(v.value).str() + "/" + az::den(v.value).str();
    out["decimal"] = az::decimal_string(v.value, digits);
    out["error_bound"] = "1/" + az::den(v.error_bound).str();
    return out;
}

py::tuple binom_identity(long n) {
    auto [lhs, rhs] = az::binomial_sum_identity(n);
    return py::make_tuple(lhs.str(), rhs.str(), lhs == rhs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Almkvist-Zeilberger creative telescoping with exact certificates";

    // translators run newest-first, so the base class goes first
    py::register_exception<az::MathError>(m, "MathError");
    py::register_exception<az::ParseError>(m, "ExprParseError");
    py::register_exception<az::NotHyperexponential>(m, "NotHyperexponentialError");

    m.def("derive", &derive, py::arg("expression"), py::arg("params") = std::vector<std::string>{},
          py::arg("max_order") = 4, py::arg("var") = "x", py::arg("disc") = "n",
          "Derive a minimal-order telescoper and certificate for a hyperexponential integrand.");
    m.def("verify", &verify, py::arg("expression"), py::arg("operator"), py::arg("certificate"),
          py::arg("params") = std::vector<std::string>{}, py::arg("var") = "x",
          py::arg("disc") = "n", "Exactly check L F = d/dx (R F).");
    m.def("terms", &unroll_terms, py::arg("operator"), py::arg("initial"), py::arg("start"),
          py::arg("count"), py::arg("disc") = "n", "Unroll a recurrence exactly.");
    m.def("checksol", &checksol, py::arg("operator"), py::arg("ratio"),
          py::arg("params") = std::vector<std::string>{}, py::arg("disc") = "n",
          "Check a term-ratio closed form against an operator.");
    m.def("quad", &quad, py::arg("expression"), py::arg("n"), py::arg("interval"),
          py::arg("tol") = "1e-12", py::arg("var") = "x", py::arg("disc") = "n",
          "Adaptive Gauss-Legendre integration of the integrand at a concrete n.");
    m.def("analyze_e", &analyze_e, py::arg("count") = 10, py::arg("precision") = 40,
          "Integer approximant analysis of e^-1 from the family of integrals of (x(1-x))^n exp(-x) on [0,1].");
    m.def("normalize", &normalize, py::arg("num"), py::arg("den"), py::arg("vars"),
          "Reduced, sign-normalized rational function num/den.");
    m.def("gcd", &poly_gcd, py::arg("a"), py::arg("b"), py::arg("vars"));
    m.def("derivative", &derivative, py::arg("expression"), py::arg("var"), py::arg("vars"));
    m.def("shift", &shift, py::arg("expression"), py::arg("var"), py::arg("k"), py::arg("vars"));
    m.def("operator_equivalent", &op_equivalent, py::arg("a"), py::arg("b"),
          py::arg("params") = std::vector<std::string>{}, py::arg("disc") = "n");
    m.def("constant_inv_e", &inv_e, py::arg("digits"));
    m.def("binomial_sum_identity", &binom_identity, py::arg("n"));

#ifdef VERSION_INFO
#define AZ_STR(x) #x
#define AZ_XSTR(x) AZ_STR(x)
    m.attr("__version__") = AZ_XSTR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
