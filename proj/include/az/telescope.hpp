#pragma once

#include "az/hyperterm.hpp"
#include "az/operator.hpp"
#include "az/quadrature.hpp"

#include <optional>

namespace az {

// T(n, x) = sum_k q_k(n) S_k(x) with S_0 = 1 and S_k = S_{k-1} R1(n+k-1),
// the operator's action on F divided through by F_n.
RatFunc telescoper_lhs(const HyperTerm& h, const std::vector<RatFunc>& q);

// Outcome of checking L F = d/dx (R F) exactly.
//
// ok means the residual T - (R' + R R2) is identically zero. When it is not,
// `residual` holds the nonzero difference; if T and R' + R R2 agree up to a
// factor free of the continuous variable, that factor is reported in
// `proportionality` (the pair (L, proportionality * R) then verifies).
struct VerifyResult {
    bool ok = false;
    RatFunc residual;
    std::optional<RatFunc> proportionality;
};

VerifyResult verify_certificate(const HyperTerm& h, const std::vector<RatFunc>& op_coeffs,
                                const RatFunc& certificate);
VerifyResult verify_certificate(const HyperTerm& h, const RecOperator& op,
                                const RatFunc& certificate);

struct DeriveConfig {
    int max_order = 4;
    int degree_step = 2;     // raise the z-degree bound by this much per retry
    int degree_raises = 3;   // number of raises before boosting the denominator
    bool denominator_boost = true;
};

struct DeriveAttempt {
    int order = 0;
    int degree_bound = 0;
    bool boosted = false;
    int unknowns = 0;
    int equations = 0;
    int candidates = 0;      // null-space members with some q_k nonzero
};

struct DeriveStats {
    std::vector<DeriveAttempt> attempts;
    // Nonconstant polynomials in the parameters that were assumed nonzero
    // while eliminating; results are generic outside their zero sets.
    std::vector<MultiPoly> generic_divisors;
};

struct AZResult {
    RecOperator op;
    RatFunc certificate;
    DeriveStats stats;
};

struct NotFoundError : MathError {
    DeriveStats stats;
    NotFoundError(const std::string& what, DeriveStats s)
        : MathError(what), stats(std::move(s)) {}
};

// Ansatz-and-solve derivation of a minimal-order telescoper within the
// configured bounds. Every returned pair has been verified exactly; failure
// raises NotFoundError with the bounds that were tried.
AZResult az_derive(const HyperTerm& h, const DeriveConfig& config = {});

// Numeric behaviour of R(n, x) F_n(x) near the interval endpoints.
struct EndpointPoint {
    Real x = 0;
    std::optional<Real> value;  // empty when evaluation hit a pole
};

struct EndpointSide {
    std::string endpoint;  // decimal endpoint, "inf" or "-inf"
    long n = 0;
    std::vector<EndpointPoint> path;
    std::optional<Real> limit_estimate;
    bool vanishes = false;
    bool had_pole = false;
};

struct EndpointReport {
    std::vector<EndpointSide> sides;
};

EndpointReport endpoint_report(const HyperTerm& h, const RatFunc& certificate,
                               const Interval& interval, const std::vector<long>& sample_n,
                               const Real& tol = Real("1e-8"),
                               const std::map<std::string, Rational>& param_values = {});

}  // namespace az
