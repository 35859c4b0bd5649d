#include "ohlab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ohlab/spectral.hpp"

namespace ohlab {

namespace {

double l2sq(const Field& f) {
    const double v = spectral::norm_l2(f);
    return v * v;
}

// Composite trapezoid of per-save values over the trajectory's times.
double time_trapezoid(const Trajectory& traj, const std::vector<double>& values) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < values.size(); ++i) {
        const double h = traj.states[i + 1].t - traj.states[i].t;
        acc += 0.5 * h * (values[i] + values[i + 1]);
    }
    return acc;
}

}  // namespace

QuarticBound quartic_root(double C0, double P0_l2, double T) {
    if (C0 < 0.0 || P0_l2 < 0.0 || !(T > 0.0))
        throw Error("quartic_root requires C0 >= 0, P0_l2 >= 0, T > 0");
    QuarticBound out;
    out.A = 4.0 * std::pow(C0, 4) * T;
    out.B = 4.0 * C0 * C0 * P0_l2 * P0_l2;
    if (out.A == 0.0 && out.B == 0.0) {
        out.degenerate = true;
        out.C_of_T = 0.0;
        return out;
    }
    auto g = [&](double x) { return x * x * x * x - out.A * x - out.B; };
    double hi = std::max({1.0, std::cbrt(2.0 * out.A), std::pow(2.0 * out.B, 0.25)});
    while (g(hi) <= 0.0) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) <= 0.0 ? lo : hi) = mid;
    }
    out.C_of_T = 0.5 * (lo + hi);
    return out;
}

double l2_balance_residual(const Trajectory& traj, double eps) {
    const double e0 = l2sq(traj.front().u);
    double worst = 0.0;
    for (const auto& s : traj.states) {
        const double r = std::abs(l2sq(s.u) + 2.0 * eps * s.integrals.grad_l2 - e0);
        worst = std::max(worst, r);
    }
    return worst / std::max(1.0, e0);
}

PAudit audit_P(const Trajectory& traj, const QuarticBound& bound, double eps, double slack) {
    PAudit out;
    const Field P0 = compute_P(traj.front().u);
    const double p0 = l2sq(P0);
    for (const auto& s : traj.states) {
        const Field P = compute_P(s.u);
        out.linf_P = std::max(out.linf_P, spectral::norm_linf(P));
        out.l2_P = std::max(out.l2_P, spectral::norm_l2(P));
        const double r =
            std::abs(l2sq(P) - p0 + 2.0 * eps * s.integrals.u_l2 + s.integrals.P_u2);
        out.identity_residual = std::max(out.identity_residual, r);
    }
    out.identity_residual /= std::max(1.0, p0);
    out.pass = out.linf_P <= bound.C_of_T * (1.0 + slack);
    return out;
}

double audit_supnorm_scaling(const std::vector<std::pair<double, double>>& beta_linfu) {
    double sup = 0.0;
    for (const auto& [beta, linfu] : beta_linfu) {
        if (!(beta > 0.0)) throw Error("audit_supnorm_scaling requires positive betas");
        sup = std::max(sup, linfu * std::cbrt(beta));
    }
    return sup;
}

double G_functional(const State& state, double beta) {
    const Field& u = state.u;
    const Field ux = spectral::derivative(u, 1);
    const Field uxx = spectral::derivative(u, 2);
    double u4 = 0.0, u_ux2 = 0.0, uxx2 = 0.0;
    for (int j = 0; j < u.size(); ++j) {
        u4 += u[j] * u[j] * u[j] * u[j];
        u_ux2 += u[j] * ux[j] * ux[j];
        uxx2 += uxx[j] * uxx[j];
    }
    const double dx = u.grid.dx;
    return 0.25 * u4 * dx + 3.0 * beta * u_ux2 * dx + 1.8 * beta * beta * uxx2 * dx;
}

std::map<std::string, double> FamilyBounds::as_map() const {
    return {
        {"l4_time_integral", l4_time_integral},
        {"eps_u_ux_int", eps_u_ux_int},
        {"beta2_eps_uxxx_int", beta2_eps_uxxx_int},
        {"sup_eps_grad_l2", sup_eps_grad_l2},
        {"eps3_uxx_int", eps3_uxx_int},
        {"beta2_uxx_int_over_eps", beta2_uxx_int_over_eps},
        {"beta_ux_uxx_l1", beta_ux_uxx_l1},
        {"sup_beta_grad_scaled", sup_beta_grad_scaled},
    };
}

FamilyBounds audit_families(const Trajectory& traj, const RegParams& params) {
    FamilyBounds out;
    const double eps = params.eps, beta = params.beta;
    const TimeIntegrals& end = traj.back().integrals;

    out.eps_u_ux_int = eps * end.u_ux_l2;
    out.beta2_eps_uxxx_int = beta * beta * eps * end.uxxx_l2;
    out.eps3_uxx_int = eps * eps * eps * end.uxx_l2;
    if (eps > 0.0)
        out.beta2_uxx_int_over_eps = beta * beta * end.uxx_l2 / eps;
    else
        out.beta2_uxx_int_over_eps =
            beta > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;

    std::vector<double> l4_series, absux_uxx_series;
    double sup_grad2 = 0.0;
    for (const auto& s : traj.states) {
        const double l4 = spectral::norm_l4(s.u);
        l4_series.push_back(l4 * l4 * l4 * l4);
        const Field ux = spectral::derivative(s.u, 1);
        const Field uxx = spectral::derivative(s.u, 2);
        double grad2 = 0.0, mixed = 0.0;
        for (int j = 0; j < s.u.size(); ++j) {
            grad2 += ux[j] * ux[j];
            mixed += std::abs(ux[j] * uxx[j]);
        }
        grad2 *= s.u.grid.dx;
        mixed *= s.u.grid.dx;
        sup_grad2 = std::max(sup_grad2, grad2);
        absux_uxx_series.push_back(mixed);
    }
    out.l4_time_integral = time_trapezoid(traj, l4_series);
    out.beta_ux_uxx_l1 = beta * time_trapezoid(traj, absux_uxx_series);
    out.sup_eps_grad_l2 = eps * std::sqrt(sup_grad2);
    out.sup_beta_grad_scaled = beta * sup_grad2 * std::cbrt(beta);
    return out;
}

DissipationTerms dissipation_breakdown(const Trajectory& traj, const RegParams& params,
                                       const EntropyPair& entropy) {
    if (!(entropy.delta > 0.0))
        throw Error("dissipation_breakdown needs the smoothed entropy (delta > 0)");
    const double eps = params.eps, beta = params.beta, gamma = params.gamma;

    std::vector<double> g1, g2, g3, g4, g5;
    for (const auto& s : traj.states) {
        const Field& u = s.u;
        const Field ux = spectral::derivative(u, 1);
        const Field uxx = spectral::derivative(u, 2);
        const Field P = compute_P(u);
        double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0, a5 = 0.0;
        for (int j = 0; j < u.size(); ++j) {
            const double ep = entropy.eta_prime(u[j]);
            const double es = entropy.eta_second(u[j]);
            const double t1 = eps * ep * ux[j];
            a1 += t1 * t1;
            a2 += eps * es * ux[j] * ux[j];
            const double t3 = beta * ep * uxx[j];
            a3 += t3 * t3;
            a4 += beta * es * std::abs(ux[j] * uxx[j]);
            a5 += std::abs(gamma * ep * P[j]);
        }
        const double dx = u.grid.dx;
        g1.push_back(a1 * dx);
        g2.push_back(a2 * dx);
        g3.push_back(a3 * dx);
        g4.push_back(a4 * dx);
        g5.push_back(a5 * dx);
    }
    DissipationTerms out;
    out.eps_grad_l2 = std::sqrt(time_trapezoid(traj, g1));
    out.i2_l1 = time_trapezoid(traj, g2);
    out.beta_uxx_l2 = std::sqrt(time_trapezoid(traj, g3));
    out.i4_l1 = time_trapezoid(traj, g4);
    out.i5_l1 = time_trapezoid(traj, g5);
    return out;
}

bool AuditReport::all_pass() const {
    for (const auto& [tag, c] : checks)
        if (!c.pass) return false;
    return true;
}

std::vector<std::string> AuditReport::failed_tags() const {
    std::vector<std::string> out;
    for (const auto& [tag, c] : checks)
        if (!c.pass) out.push_back(tag);
    return out;
}

nlohmann::json AuditReport::to_json() const {
    nlohmann::json j;
    j["kind"] = kind;
    j["params"] = {{"eps", params.eps},
                   {"beta", params.beta},
                   {"gamma", params.gamma},
                   {"regime", params.regime()}};
    nlohmann::json jc;
    for (const auto& [tag, c] : checks)
        jc[tag] = {{"value", c.value}, {"tol", c.tol}, {"pass", c.pass}};
    j["checks"] = jc;
    j["scalars"] = scalars;
    j["series"] = series;
    j["dissipation"] = {{"eps_grad_l2", dissipation.eps_grad_l2},
                        {"i2_l1", dissipation.i2_l1},
                        {"beta_uxx_l2", dissipation.beta_uxx_l2},
                        {"i4_l1", dissipation.i4_l1},
                        {"i5_l1", dissipation.i5_l1}};
    j["families"] = families.as_map();
    return j;
}

AuditReport audit_regularized(const Trajectory& traj, const RegParams& params,
                              const AuditTolerances& tol) {
    AuditReport rep;
    rep.kind = "regularized";
    rep.params = params;

    bool finite = true;
    double worst_mean = 0.0, worst_mean_tol = 0.0;
    std::vector<double> ts, l2s, l4s, linfs, linf_p, l2_p, g_series, beta_grad;
    double linf_u = 0.0;
    for (const auto& s : traj.states) {
        ts.push_back(s.t);
        l2s.push_back(spectral::norm_l2(s.u));
        l4s.push_back(spectral::norm_l4(s.u));
        const double li = spectral::norm_linf(s.u);
        linfs.push_back(li);
        linf_u = std::max(linf_u, li);
        for (double v : s.u.values)
            if (!std::isfinite(v)) finite = false;
        worst_mean = std::max(worst_mean, std::abs(spectral::mean(s.u)));
        worst_mean_tol = std::max(worst_mean_tol, spectral::mean_tolerance(s.u));
        const Field P = compute_P(s.u);
        linf_p.push_back(spectral::norm_linf(P));
        l2_p.push_back(spectral::norm_l2(P));
        g_series.push_back(G_functional({s.t, s.u}, params.beta));
        const Field ux = spectral::derivative(s.u, 1);
        const double gr = spectral::norm_l2(ux);
        beta_grad.push_back(params.beta * gr * gr);
    }
    rep.series["t"] = ts;
    rep.series["l2"] = l2s;
    rep.series["l4"] = l4s;
    rep.series["linf"] = linfs;
    rep.series["linf_P"] = linf_p;
    rep.series["l2_P"] = l2_p;
    rep.series["G"] = g_series;
    rep.series["beta_grad"] = beta_grad;

    const InitialData data = make_initial_data(traj.front().u, params.eps, params.beta);
    const QuarticBound bound =
        quartic_root(data.C0, spectral::norm_l2(data.P0), traj.duration());
    const double balance = l2_balance_residual(traj, params.eps);
    const PAudit pa = audit_P(traj, bound, params.eps, tol.p_slack);

    rep.checks["finite"] = {finite ? 0.0 : 1.0, 0.5, finite};
    rep.checks["eq:con-u"] = {worst_mean, worst_mean_tol, worst_mean <= worst_mean_tol};
    rep.checks["lm:l2-u"] = {balance, tol.l2_balance, balance <= tol.l2_balance};
    rep.checks["lm:P-infty"] = {pa.linf_P, bound.C_of_T * (1.0 + tol.p_slack), pa.pass};
    rep.checks["eq:1200"] = {pa.identity_residual, tol.p_identity,
                             pa.identity_residual <= tol.p_identity};

    rep.scalars["C0"] = data.C0;
    rep.scalars["P0_l2"] = spectral::norm_l2(data.P0);
    rep.scalars["quartic_A"] = bound.A;
    rep.scalars["quartic_B"] = bound.B;
    rep.scalars["quartic_root"] = bound.C_of_T;
    rep.scalars["linf_P_max"] = pa.linf_P;
    rep.scalars["l2_P_max"] = pa.l2_P;
    rep.scalars["linf_u_max"] = linf_u;
    rep.scalars["linf_u_scaled"] =
        params.beta > 0.0 ? linf_u * std::cbrt(params.beta) : 0.0;
    rep.scalars["max_tail_fraction"] = traj.max_tail_fraction;

    rep.families = audit_families(traj, params);
    rep.dissipation = dissipation_breakdown(traj, params, EntropyPair{0.0, 1e-3});
    return rep;
}

AuditReport audit_limit(const Trajectory& traj, double gamma, const AuditTolerances& tol) {
    AuditReport rep;
    rep.kind = "limit";
    rep.params.gamma = gamma;

    bool finite = true;
    std::vector<double> ts, l2s, l4s, linfs, masses;
    for (const auto& s : traj.states) {
        ts.push_back(s.t);
        l2s.push_back(spectral::norm_l2(s.u));
        l4s.push_back(spectral::norm_l4(s.u));
        linfs.push_back(spectral::norm_linf(s.u));
        masses.push_back(spectral::integral(s.u));
        for (double v : s.u.values)
            if (!std::isfinite(v)) finite = false;
    }
    rep.series["t"] = ts;
    rep.series["l2"] = l2s;
    rep.series["l4"] = l4s;
    rep.series["linf"] = linfs;
    rep.series["mass"] = masses;

    double worst_mass = 0.0;
    for (double m : masses) worst_mass = std::max(worst_mass, std::abs(m));
    rep.checks["finite"] = {finite ? 0.0 : 1.0, 0.5, finite};
    rep.checks["mass"] = {worst_mass, tol.mass, worst_mass <= tol.mass};

    // Kruzhkov family over a k-grid spanning the initial data range; the
    // mollifier widens automatically if saves are too sparse for the
    // configured width.
    const Field& u0 = traj.front().u;
    const double lo = *std::min_element(u0.values.begin(), u0.values.end());
    const double hi = *std::max_element(u0.values.begin(), u0.values.end());
    double max_spacing = 0.0;
    for (size_t i = 0; i + 1 < traj.size(); ++i)
        max_spacing = std::max(max_spacing, traj.states[i + 1].t - traj.states[i].t);
    const double w = std::max(tol.mollifier_width, 4.0 * max_spacing * 1.0000001);
    rep.scalars["mollifier_width"] = w;
    const double tol_entropy =
        tol.entropy_scale * spectral::norm_linf(u0) * (2.0 * w) * (2.0 * w);

    double worst_res = -std::numeric_limits<double>::infinity();
    const int nk = std::max(1, tol.kruzhkov_points);
    for (int i = 0; i < nk; ++i) {
        const double k = nk == 1 ? 0.5 * (lo + hi)
                                 : lo + (hi - lo) * static_cast<double>(i) / (nk - 1);
        worst_res = std::max(worst_res, entropy_residual(traj, gamma, k, w));
    }
    rep.scalars["entropy_residual_max"] = worst_res;
    rep.checks["entropy-kruzhkov"] = {worst_res, tol_entropy, worst_res <= tol_entropy};

    if (gamma == 0.0) {
        double viol = 0.0;
        for (const auto& s : traj.states)
            for (double v : s.u.values)
                viol = std::max(viol, std::max(lo - v, v - hi));
        rep.checks["max-principle"] = {viol, tol.max_principle, viol <= tol.max_principle};

        double worst_inc = 0.0;
        for (size_t i = 0; i + 1 < l2s.size(); ++i)
            worst_inc = std::max(worst_inc, l2s[i + 1] - l2s[i]);
        rep.checks["l2-nonincrease"] = {worst_inc, tol.max_principle,
                                        worst_inc <= tol.max_principle};
    }
    return rep;
}

}  // namespace ohlab
