#pragma once

#include <map>
#include <string>
#include <vector>

#include "ohlab/fv_solver.hpp"
#include "ohlab/nonlocal.hpp"
#include "ohlab/trajectory.hpp"

#include "json.hpp"

namespace ohlab {

/// Root data of g(X) = X^4 - A*X - B with A = 4*C0^4*T, B = 4*C0^2*|P0|_2^2.
struct QuarticBound {
    double A = 0.0;
    double B = 0.0;
    double C_of_T = 0.0;
    bool degenerate = false;  // A = B = 0
};

QuarticBound quartic_root(double C0, double P0_l2, double T);

/// Max over save times of |  |u(t)|_2^2 + 2 eps int_0^t |u_x|_2^2 ds
///                         - |u0|_2^2 | / max(1, |u0|_2^2).
double l2_balance_residual(const Trajectory& traj, double eps);

struct PAudit {
    double linf_P = 0.0;
    double l2_P = 0.0;
    double identity_residual = 0.0;  // the P-energy balance residual
    bool pass = false;
};
PAudit audit_P(const Trajectory& traj, const QuarticBound& bound, double eps,
               double slack = 0.1);

/// sup over runs of |u|_inf * beta^{1/3}.
double audit_supnorm_scaling(const std::vector<std::pair<double, double>>& beta_linfu);

/// G(t) = 1/4 int u^4 + 3 beta int u u_x^2 + 9/5 beta^2 int u_xx^2.
double G_functional(const State& state, double beta);

/// The a priori families, one value per trajectory. Each must stay bounded
/// across an eps-sweep with beta = c*eps^2.
struct FamilyBounds {
    double l4_time_integral = 0.0;        // int_0^T |u|_4^4 dt
    double eps_u_ux_int = 0.0;            // eps int |u u_x|_2^2 dt
    double beta2_eps_uxxx_int = 0.0;      // beta^2 eps int |u_xxx|_2^2 dt
    double sup_eps_grad_l2 = 0.0;         // sup_t eps |u_x|_2
    double eps3_uxx_int = 0.0;            // eps^3 int |u_xx|_2^2 dt
    double beta2_uxx_int_over_eps = 0.0;  // beta^2 int |u_xx|_2^2 dt / eps
    double beta_ux_uxx_l1 = 0.0;          // beta int int |u_x u_xx| dx dt
    double sup_beta_grad_scaled = 0.0;    // sup_t beta |u_x|_2^2 * beta^{1/3}

    std::map<std::string, double> as_map() const;
};
FamilyBounds audit_families(const Trajectory& traj, const RegParams& params);

/// L^(I_T)-norms of the five entropy dissipation terms
///   I1 = d/dx(eps eta' u_x), I2 = -eps eta'' u_x^2,
///   I3 = d/dx(beta eta' u_xx), I4 = -beta eta'' u_x u_xx,
///   I5 = gamma eta'(u) P.
struct DissipationTerms {
    double eps_grad_l2 = 0.0;   // |eps eta'(u) u_x|_L2
    double i2_l1 = 0.0;         // |I2|_L1
    double beta_uxx_l2 = 0.0;   // |beta eta'(u) u_xx|_L2
    double i4_l1 = 0.0;         // |I4|_L1
    double i5_l1 = 0.0;         // |I5|_L1
};
DissipationTerms dissipation_breakdown(const Trajectory& traj, const RegParams& params,
                                       const EntropyPair& entropy);

struct AuditCheck {
    double value = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct AuditTolerances {
    double l2_balance = 1e-6;
    double p_identity = 1e-5;
    double p_slack = 0.1;
    double mass = 1e-12;
    double entropy_scale = 1e-3;     // tol = scale * |u0|_inf * bump support area
    double mollifier_width = 0.35;
    double max_principle = 1e-10;
    int kruzhkov_points = 9;
};

/// Structured result of the per-run estimate checks. `checks` is keyed by
/// the audit tag ("lm:l2-u", "lm:P-infty", ...).
struct AuditReport {
    std::string kind;  // "regularized" | "limit"
    RegParams params;
    std::map<std::string, AuditCheck> checks;
    std::map<std::string, double> scalars;
    std::map<std::string, std::vector<double>> series;
    DissipationTerms dissipation;
    FamilyBounds families;

    bool all_pass() const;
    std::vector<std::string> failed_tags() const;
    nlohmann::json to_json() const;
};

AuditReport audit_regularized(const Trajectory& traj, const RegParams& params,
                              const AuditTolerances& tol = {});
AuditReport audit_limit(const Trajectory& traj, double gamma,
                        const AuditTolerances& tol = {});

}  // namespace ohlab
