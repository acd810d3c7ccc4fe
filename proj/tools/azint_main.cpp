// azint: creative telescoping for hyperexponential integrands, with exact
// certificate verification, recurrence unrolling, numerical cross-checks,
// and the e^-1 rational-approximation analysis.

#include "az/irrationality.hpp"
#include "az/recurrence.hpp"
#include "az/telescope.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using json = nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

struct Common {
    std::string var = "x";
    std::string disc = "n";
    std::string params_csv;
    std::string out_path;
    bool json_mode = false;
    int precision = 30;

    std::vector<std::string> params() const {
        std::vector<std::string> out;
        std::string cur;
        for (char c : params_csv) {
            if (c == ',') {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur += c;
            }
        }
        if (!cur.empty()) out.push_back(cur);
        for (const auto& p : out)
            if (p == "N" || p == "exp" || p == "inv_e" || p == "pi" || p == var || p == disc)
                throw az::ParseError("parameter name '" + p + "' is reserved", 0);
        return out;
    }
};

void add_common(CLI::App* cmd, Common& common, bool with_vars = true) {
    if (with_vars) {
        cmd->add_option("--var", common.var, "continuous variable (default x)");
        cmd->add_option("--disc", common.disc, "discrete parameter (default n)");
        cmd->add_option("--params", common.params_csv, "comma-separated symbolic parameters");
    }
    cmd->add_flag("--json", common.json_mode, "emit a JSON document");
    cmd->add_option("--out", common.out_path, "write output to FILE instead of stdout");
    cmd->add_option("--precision", common.precision, "working decimal precision");
}

void emit(const Common& common, const std::string& text) {
    if (common.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(common.out_path);
        if (!f) throw az::MathError("cannot open output file " + common.out_path);
        f << text;
        if (!text.empty() && text.back() != '\n') f << "\n";
    }
}

void emit(const Common& common, const json& doc) { emit(common, doc.dump(2)); }

std::string real_string(const az::Real& v, int digits = 20) {
    return v.str(digits, std::ios_base::scientific);
}

json endpoint_json(const az::EndpointReport& report) {
    json sides = json::array();
    for (const auto& s : report.sides) {
        json side;
        side["endpoint"] = s.endpoint;
        side["n"] = s.n;
        side["vanishes"] = s.vanishes;
        side["hadPole"] = s.had_pole;
        side["limitEstimate"] = s.limit_estimate ? real_string(*s.limit_estimate) : "unavailable";
        sides.push_back(side);
    }
    return sides;
}

std::string endpoint_text(const az::EndpointReport& report) {
    std::string out;
    for (const auto& s : report.sides) {
        out += "  endpoint " + s.endpoint + ", n = " + std::to_string(s.n) + ": ";
        out += s.limit_estimate ? "limit ~ " + real_string(*s.limit_estimate) : "no estimate";
        out += s.vanishes ? "  [vanishes]" : "  [does NOT vanish]";
        if (s.had_pole) out += "  (pole on approach path)";
        out += "\n";
    }
    return out;
}

int cmd_az(const Common& common, const std::string& expr, int max_order,
           const std::string& interval_text) {
    az::HyperTerm h = az::HyperTerm::parse(expr, common.var, common.disc, common.params());
    az::DeriveConfig config;
    config.max_order = max_order;
    az::AZResult result = az::az_derive(h, config);

    std::optional<az::EndpointReport> endpoints;
    if (!interval_text.empty()) {
        az::Interval iv = az::Interval::parse(interval_text);
        endpoints = az::endpoint_report(h, result.certificate, iv, {0, 1, 2, 3});
    }

    std::vector<std::string> generic;
    for (const auto& g : result.stats.generic_divisors) generic.push_back(g.to_string());

    if (common.json_mode) {
        json doc;
        doc["schemaVersion"] = kSchemaVersion;
        doc["command"] = "az";
        doc["expression"] = h.to_string();
        doc["operator"] = result.op.to_string();
        doc["certificate"] = result.certificate.to_string();
        doc["order"] = result.op.order();
        json attempts = json::array();
        for (const auto& a : result.stats.attempts)
            attempts.push_back({{"order", a.order},
                                {"degreeBound", a.degree_bound},
                                {"boosted", a.boosted},
                                {"unknowns", a.unknowns},
                                {"equations", a.equations},
                                {"candidates", a.candidates}});
        doc["stats"] = {{"attempts", attempts}, {"genericDivisors", generic}};
        if (endpoints) doc["endpointReport"] = endpoint_json(*endpoints);
        emit(common, doc);
    } else {
        std::string out;
        out += "operator:    " + result.op.to_string() + "\n";
        out += "certificate: " + result.certificate.to_string() + "\n";
        out += "order:       " + std::to_string(result.op.order()) + "\n";
        if (!generic.empty()) {
            out += "generic in parameters: results assume these do not vanish:\n";
            for (const auto& g : generic) out += "  " + g + "\n";
        }
        if (endpoints) {
            out += "endpoint report (R*F along approach paths):\n";
            out += endpoint_text(*endpoints);
        }
        emit(common, out);
    }
    return 0;
}

int cmd_verify(const Common& common, const std::string& expr, const std::string& op_text,
               const std::string& cert_text) {
    az::HyperTerm h = az::HyperTerm::parse(expr, common.var, common.disc, common.params());
    auto params = common.params();
    std::vector<az::RatFunc> coeffs =
        az::RecOperator::parse_coefficients(op_text, common.disc, params);
    std::set<std::string> allowed{common.var, common.disc};
    allowed.insert(params.begin(), params.end());
    az::RatFunc cert = az::parse_ratfunc(cert_text, allowed);

    az::VerifyResult res = az::verify_certificate(h, coeffs, cert);
    if (common.json_mode) {
        json doc;
        doc["schemaVersion"] = kSchemaVersion;
        doc["command"] = "verify";
        doc["ok"] = res.ok;
        if (!res.ok) {
            doc["residual"] = res.residual.to_string();
            if (res.proportionality)
                doc["proportionality"] = res.proportionality->to_string();
        }
        emit(common, doc);
    } else {
        std::string out;
        if (res.ok) {
            out = "verified: the pair satisfies L F = d/d" + common.var + " (R F)\n";
        } else {
            out = "NOT verified; residual = " + res.residual.to_string() + "\n";
            if (res.proportionality)
                out += "pair is off by the " + common.var + "-free factor " +
                       res.proportionality->to_string() + " (L, " +
                       res.proportionality->to_string() + " * R) verifies\n";
        }
        emit(common, out);
    }
    return res.ok ? 0 : 1;
}

int cmd_terms(const Common& common, const std::string& op_text, const std::string& initial_csv,
              long start, int count) {
    az::RecOperator op = az::RecOperator::parse(op_text, common.disc, common.params());
    std::vector<az::ExactNumber> initials;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) initials.push_back(az::ExactNumber::parse(cur));
        cur.clear();
    };
    for (char c : initial_csv) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();

    az::SequenceTable table = az::unroll(op, initials, start, count);
    if (common.json_mode) {
        json doc;
        doc["schemaVersion"] = kSchemaVersion;
        doc["command"] = "terms";
        doc["operator"] = table.op.to_string();
        doc["startIndex"] = table.start;
        json values = json::array();
        for (const auto& v : table.values)
            values.push_back({{"rational", v.rational_part().str()},
                              {"constCoeff", v.const_coeff().str()},
                              {"constTag", az::const_tag_name(v.tag())}});
        doc["values"] = values;
        emit(common, doc);
    } else {
        std::string out;
        for (size_t i = 0; i < table.values.size(); ++i)
            out += std::to_string(table.start + static_cast<long>(i)) + ": " +
                   table.values[i].to_string() + "\n";
        emit(common, out);
    }
    return 0;
}

int cmd_checksol(const Common& common, const std::string& op_text, const std::string& ratio_text) {
    auto params = common.params();
    az::RecOperator op = az::RecOperator::parse(op_text, common.disc, params);
    std::set<std::string> allowed{common.disc};
    allowed.insert(params.begin(), params.end());
    az::RatFunc ratio = az::parse_ratfunc(ratio_text, allowed);
    bool ok = az::check_solution(op, ratio);
    if (common.json_mode) {
        json doc;
        doc["schemaVersion"] = kSchemaVersion;
        doc["command"] = "checksol";
        doc["ok"] = ok;
        emit(common, doc);
    } else {
        emit(common, std::string(ok ? "ratio satisfies the recurrence\n"
                                    : "ratio does NOT satisfy the recurrence\n"));
    }
    return ok ? 0 : 1;
}

int cmd_quad(const Common& common, const std::string& expr, long n,
             const std::string& interval_text, const std::string& tol_text) {
    az::HyperTerm h = az::HyperTerm::parse(expr, common.var, common.disc, common.params());
    az::Interval iv = az::Interval::parse(interval_text);
    az::QuadConfig config;
    config.tol = az::Real(tol_text);
    az::QuadResult res = az::integrate(h, n, iv, {}, config);
    int digits = common.precision;
    if (common.json_mode) {
        json doc;
        doc["schemaVersion"] = kSchemaVersion;
        doc["command"] = "quad";
        doc["value"] = res.value.str(digits, std::ios_base::scientific);
        doc["errorEstimate"] = real_string(res.error_estimate, 3);
        doc["digits"] = digits;
        doc["evaluations"] = res.evaluations;
        doc["maxDepth"] = res.max_depth;
        emit(common, doc);
    } else {
        std::string out;
        out += "value:          " + res.value.str(digits, std::ios_base::scientific) + "\n";
        out += "error estimate: " + real_string(res.error_estimate, 3) + "\n";
        emit(common, out);
    }
    return 0;
}

int cmd_analyze_e(const Common& common, int count, const std::string& c_text,
                  const std::string& delta_text) {
    // everything downstream is derived from this integrand
    az::HyperTerm h = az::HyperTerm::parse("(x*(1-x))^n * exp(-x)", common.var, common.disc, {});
    az::AZResult derived = az::az_derive(h);

    az::Rational C = az::rational_from_string(c_text);
    az::Rational delta = az::rational_from_string(delta_text);

    std::vector<az::ApproxRecord> records = az::approximation_report(
        derived.op, {-1, 14}, {3, -38}, 1, count, common.precision);
    az::CertifiedRational einv = az::constant_inv_e(common.precision);
    std::vector<az::CriterionRow> criterion =
        az::irrationality_criterion_check(records, einv, C, delta);
    az::PoincareReport poincare = az::poincare_leading(derived.op);

    if (common.json_mode) {
        json doc;
        doc["schemaVersion"] = kSchemaVersion;
        doc["command"] = "analyze-e";
        doc["operator"] = derived.op.to_string();
        doc["certificate"] = derived.certificate.to_string();
        doc["invE"] = {{"value", az::decimal_string(einv.value, common.precision)},
                       {"digits", common.precision},
                       {"errorBound", "1/" + az::den(einv.error_bound).str()}};
        json recs = json::array();
        for (size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            json row;
            row["n"] = r.n;
            row["a"] = r.a.str();
            row["b"] = r.b.str();
            row["gcd"] = r.g.str();
            row["p"] = r.p.str();
            row["q"] = r.q.str();
            int digits = common.precision;
            row["approx"] = az::decimal_string(az::Rational(r.p, r.q), digits);
            row["digits"] = digits;
            row["decayOk"] = r.decay_ok;
            row["exponentEstimate"] = r.exponent_estimate;
            row["criterionHolds"] = criterion[i].holds;
            recs.push_back(row);
        }
        doc["records"] = recs;
        doc["criterion"] = {{"C", c_text}, {"delta", delta_text}};
        json layers = json::array();
        for (const auto& l : poincare.layers) layers.push_back(l.to_string());
        json roots = json::array();
        for (const auto& r : poincare.rational_roots) roots.push_back(r.str());
        doc["poincare"] = {{"layers", layers},
                           {"qTop", poincare.q_top.to_string()},
                           {"rationalRoots", roots},
                           {"degenerate", poincare.degenerate}};
        emit(common, doc);
    } else {
        std::string out;
        out += "operator:  " + derived.op.to_string() + "\n";
        out += "e^-1 =     " + az::decimal_string(einv.value, common.precision) + " (" +
               std::to_string(common.precision) + " digits)\n";
        out += "poincare leading layer q_top(N) = " + poincare.q_top.to_string();
        if (poincare.degenerate) {
            out += "  [degenerate]\n";
        } else {
            out += "  roots:";
            for (const auto& r : poincare.rational_roots) out += " " + r.str();
            out += "\n";
        }
        out += "\n  n | -a_n/b_n (reduced p/q, truncated) | gcd(a,b) | decay | exponent | criterion\n";
        for (size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            int digits = std::min(common.precision, 24);
            out += "  " + std::to_string(r.n) + " | " +
                   az::decimal_string(az::Rational(r.p, r.q), digits) + " | " + r.g.str() + " | " +
                   (r.decay_ok ? "ok" : "FAIL") + " | " + std::to_string(r.exponent_estimate) +
                   " | " + (criterion[i].holds ? "holds" : "fails") + "\n";
        }
        emit(common, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Almkvist-Zeilberger creative telescoping for hyperexponential integrands"};
    app.require_subcommand(1);

    // the environment supplies only the default; --precision overrides
    auto default_precision = []() {
        if (const char* env = std::getenv("AZINT_PRECISION")) {
            try {
                return std::stoi(env);
            } catch (...) {
            }
        }
        return 30;
    };

    Common c_az, c_verify, c_terms, c_checksol, c_quad, c_analyze;
    c_az.precision = c_verify.precision = c_terms.precision = c_checksol.precision =
        c_quad.precision = c_analyze.precision = default_precision();

    std::string expr, op_text, cert_text, ratio_text, initial_csv, interval_text;
    std::string tol_text = "1e-12", c_text = "1", delta_text = "1";
    int max_order = 4, count = 10;
    long n_value = 0, start = 0;

    CLI::App* az_cmd = app.add_subcommand("az", "derive a telescoper L and certificate R");
    az_cmd->add_option("expression", expr, "integrand, e.g. \"exp(-x)*x^n\"")->required();
    az_cmd->add_option("--max-order", max_order, "largest operator order to try");
    az_cmd->add_option("--interval", interval_text, "a,b | a,inf | -inf,inf (endpoint report)");
    add_common(az_cmd, c_az);

    CLI::App* verify_cmd = app.add_subcommand("verify", "check a user-supplied (L, R) pair");
    verify_cmd->add_option("expression", expr, "integrand")->required();
    verify_cmd->add_option("--operator", op_text, "operator text, e.g. \"N - n - 1\"")->required();
    verify_cmd->add_option("--certificate", cert_text, "certificate R(n,x)")->required();
    add_common(verify_cmd, c_verify);

    CLI::App* terms_cmd = app.add_subcommand("terms", "unroll a recurrence exactly");
    terms_cmd->add_option("--operator", op_text, "operator text")->required();
    terms_cmd->add_option("--initial", initial_csv,
                          "comma-separated initial values, e.g. \"-1+3*inv_e,14-38*inv_e\"")
        ->required();
    terms_cmd->add_option("--start", start, "index of the first initial value")->required();
    terms_cmd->add_option("--count", count, "total number of terms")->required();
    add_common(terms_cmd, c_terms);

    CLI::App* checksol_cmd =
        app.add_subcommand("checksol", "check a hypergeometric-ratio closed form");
    checksol_cmd->add_option("--operator", op_text, "operator text")->required();
    checksol_cmd->add_option("--ratio", ratio_text, "c_{n+1}/c_n as a rational function of n")
        ->required();
    add_common(checksol_cmd, c_checksol);

    CLI::App* quad_cmd = app.add_subcommand("quad", "high-precision numerical integration");
    quad_cmd->add_option("expression", expr, "integrand")->required();
    quad_cmd->add_option("--n", n_value, "value of the discrete parameter")->required();
    quad_cmd->add_option("--interval", interval_text, "a,b | a,inf | -inf,inf")->required();
    quad_cmd->add_option("--tol", tol_text, "absolute tolerance (default 1e-12)");
    add_common(quad_cmd, c_quad);

    CLI::App* analyze_cmd =
        app.add_subcommand("analyze-e", "integer approximants of e^-1 and exponent analysis");
    analyze_cmd->add_option("--count", count, "largest index n (default 10)");
    analyze_cmd->add_option("--c-const", c_text, "criterion constant C (default 1)");
    analyze_cmd->add_option("--delta", delta_text, "criterion exponent delta (default 1)");
    add_common(analyze_cmd, c_analyze, /*with_vars=*/false);
    CLI::Option* analyze_precision = analyze_cmd->get_option("--precision");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto active_common = [&]() -> const Common& {
        if (app.got_subcommand(verify_cmd)) return c_verify;
        if (app.got_subcommand(terms_cmd)) return c_terms;
        if (app.got_subcommand(checksol_cmd)) return c_checksol;
        if (app.got_subcommand(quad_cmd)) return c_quad;
        if (app.got_subcommand(analyze_cmd)) return c_analyze;
        return c_az;
    };

    auto report_error = [&](const std::string& what, int code) {
        const Common& common = active_common();
        if (common.json_mode) {
            json doc;
            doc["schemaVersion"] = kSchemaVersion;
            doc["error"] = what;
            doc["exitCode"] = code;
            emit(common, doc);
        } else {
            std::cerr << "error: " << what << "\n";
        }
        return code;
    };

    try {
        if (app.got_subcommand(az_cmd)) return cmd_az(c_az, expr, max_order, interval_text);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(c_verify, expr, op_text, cert_text);
        if (app.got_subcommand(terms_cmd))
            return cmd_terms(c_terms, op_text, initial_csv, start, count);
        if (app.got_subcommand(checksol_cmd)) return cmd_checksol(c_checksol, op_text, ratio_text);
        if (app.got_subcommand(quad_cmd))
            return cmd_quad(c_quad, expr, n_value, interval_text, tol_text);
        if (app.got_subcommand(analyze_cmd)) {
            // guidance: at least 4 digits per index unless precision was
            // pinned explicitly (flag or environment)
            if (analyze_precision->count() == 0 && !std::getenv("AZINT_PRECISION"))
                c_analyze.precision = std::max(c_analyze.precision, 4 * count + 10);
            return cmd_analyze_e(c_analyze, count, c_text, delta_text);
        }
    } catch (const az::ParseError& e) {
        return report_error(e.what(), 2);
    } catch (const az::UnknownSymbol& e) {
        return report_error(e.what(), 2);
    } catch (const az::MathError& e) {
        return report_error(e.what(), 1);
    } catch (const std::exception& e) {
        return report_error(e.what(), 1);
    }
    return 2;
}
