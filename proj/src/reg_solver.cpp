#include "ohlab/reg_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ohlab {

namespace {

using spectral::Spectrum;

struct Integrand {
    double grad = 0.0, u_ux = 0.0, uxxx = 0.0, uxx = 0.0, u_l2 = 0.0, P_u2 = 0.0;
};

double wavenumber(const Grid& g, int k) {
    return 2.0 * std::numbers::pi * k / g.length;
}

// Parseval weight: |f|_2^2 = (dx/n) * sum_k w_k |f_k|^2 with w = 1 at the
// ends of the half-spectrum and 2 inside.
double mode_weight(int k, int half) { return (k == 0 || k == half) ? 1.0 : 2.0; }

double l2sq_of_derivative(const Grid& g, const Spectrum& s, int order) {
    const int half = g.n / 2;
    double acc = 0.0;
    for (int k = 1; k <= half; ++k) {
        if (k == half && order % 2 == 1) continue;
        const double kp = wavenumber(g, k);
        acc += mode_weight(k, half) * std::pow(kp, 2 * order) * std::norm(s[static_cast<size_t>(k)]);
    }
    return acc * g.dx / g.n;
}

double l2sq(const Grid& g, const Spectrum& s) {
    const int half = g.n / 2;
    double acc = 0.0;
    for (int k = 0; k <= half; ++k)
        acc += mode_weight(k, half) * std::norm(s[static_cast<size_t>(k)]);
    return acc * g.dx / g.n;
}

Spectrum antiderivative(const Grid& g, Spectrum s) {
    spectral::antiderivative_spectrum(g, s);
    return s;
}

// Right-hand side N(u) = -1/2 d/dx(u^2) + gamma*P + forcing, assembled in
// spectral space with the quadratic term dealiased by the 2/3 rule.
Spectrum rhs(const Grid& g, const RegParams& params, const Spectrum& u_hat,
             double t, const StepHooks& hooks) {
    Spectrum n_hat(u_hat.size(), 0.0);
    if (hooks.nonlinearity) {
        Spectrum trunc = u_hat;
        if (hooks.dealias) spectral::truncate(g, trunc);
        Field u_phys = spectral::synthesize(g, trunc);
        for (double& v : u_phys.values) v *= v;
        Spectrum w = spectral::analyze(u_phys);
        if (hooks.dealias) spectral::truncate(g, w);
        spectral::derivative_spectrum(g, w, 1);
        for (size_t k = 0; k < w.size(); ++k) n_hat[k] = -0.5 * w[k];
    }
    if (params.gamma != 0.0) {
        Spectrum p_hat = antiderivative(g, u_hat);
        for (size_t k = 0; k < p_hat.size(); ++k) n_hat[k] += params.gamma * p_hat[k];
    }
    if (hooks.forcing) {
        Field f = sample(g, [&](double x) { return hooks.forcing(t, x); });
        Spectrum f_hat = spectral::analyze(f);
        for (size_t k = 0; k < f_hat.size(); ++k) n_hat[k] += f_hat[k];
    }
    return n_hat;
}

Integrand measure(const Grid& g, const Spectrum& u_hat, const Field& u_phys) {
    Integrand out;
    out.grad = l2sq_of_derivative(g, u_hat, 1);
    out.uxx = l2sq_of_derivative(g, u_hat, 2);
    out.uxxx = l2sq_of_derivative(g, u_hat, 3);
    out.u_l2 = l2sq(g, u_hat);

    Spectrum dx_hat = u_hat;
    spectral::derivative_spectrum(g, dx_hat, 1);
    Field ux = spectral::synthesize(g, dx_hat);
    Field P = spectral::synthesize(g, antiderivative(g, u_hat));
    double u_ux = 0.0, p_u2 = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double prod = u_phys[j] * ux[j];
        u_ux += prod * prod;
        p_u2 += P[j] * u_phys[j] * u_phys[j];
    }
    out.u_ux = u_ux * g.dx;
    out.P_u2 = p_u2 * g.dx;
    return out;
}

void guard_finite(const Field& u, double t) {
    for (double v : u.values) {
        if (!std::isfinite(v))
            throw BlowUp(t, "non-finite field value at t = " + std::to_string(t));
        if (std::abs(v) > kBlowupGuard)
            throw BlowUp(t, "|u|_inf exceeded blow-up guard at t = " + std::to_string(t));
    }
}

}  // namespace

Spectrum linear_propagator(const Grid& grid, const RegParams& params, double dt) {
    const int half = grid.n / 2;
    Spectrum e(static_cast<size_t>(half + 1));
    for (int k = 0; k <= half; ++k) {
        const double kp = wavenumber(grid, k);
        const double decay = std::exp(-params.eps * kp * kp * dt);
        double phase = -params.beta * kp * kp * kp * dt;
        if (k == half) phase = 0.0;  // Nyquist carries no odd-order symbol
        e[static_cast<size_t>(k)] = decay * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    return e;
}

State step(const State& state, const RegParams& params, double dt, const StepHooks& hooks) {
    const Grid& g = state.u.grid;
    const Spectrum e_half = linear_propagator(g, params, dt / 2);
    const Spectrum e_full = linear_propagator(g, params, dt);
    const size_t m = e_full.size();

    Spectrum u_hat = spectral::analyze(state.u);
    const double t = state.t;

    Spectrum a = rhs(g, params, u_hat, t, hooks);

    Spectrum u2(m), u3(m), u4(m);
    for (size_t k = 0; k < m; ++k) u2[k] = e_half[k] * (u_hat[k] + 0.5 * dt * a[k]);
    Spectrum b = rhs(g, params, u2, t + dt / 2, hooks);

    for (size_t k = 0; k < m; ++k) u3[k] = e_half[k] * u_hat[k] + 0.5 * dt * b[k];
    Spectrum c = rhs(g, params, u3, t + dt / 2, hooks);

    for (size_t k = 0; k < m; ++k) u4[k] = e_full[k] * u_hat[k] + dt * e_half[k] * c[k];
    Spectrum d = rhs(g, params, u4, t + dt, hooks);

    Spectrum out(m);
    for (size_t k = 0; k < m; ++k)
        out[k] = e_full[k] * u_hat[k] +
                 dt / 6.0 * (e_full[k] * a[k] + 2.0 * e_half[k] * (b[k] + c[k]) + d[k]);

    out[0] = 0.0;
    if (hooks.dealias) spectral::truncate(g, out);

    State next{t + dt, spectral::synthesize(g, out)};
    guard_finite(next.u, next.t);
    return next;
}

double cfl_dt(const State& state, const RegParams& /*params*/, double safety) {
    return safety * state.u.grid.dx / std::max(1.0, spectral::norm_linf(state.u));
}

Trajectory simulate(const InitialData& init, const RegParams& params, double T,
                    double save_every, double safety, const StepHooks& hooks,
                    ResolutionGuard guard) {
    params.validate();
    if (!(T > 0.0) || !(save_every > 0.0) || !(safety > 0.0) || safety > 1.0)
        throw Error("simulate requires T > 0, save_every > 0, 0 < safety <= 1");

    const Grid& g = init.u0.grid;
    Spectrum u_hat = spectral::analyze(init.u0);
    u_hat[0] = 0.0;
    if (hooks.dealias) spectral::truncate(g, u_hat);

    State state{0.0, spectral::synthesize(g, u_hat)};

    std::vector<double> save_times;
    for (int i = 1; i * save_every < T - 1e-12 * T; ++i) save_times.push_back(i * save_every);
    save_times.push_back(T);

    Trajectory traj;
    traj.grid = g;
    TimeIntegrals acc;
    traj.states.push_back({0.0, state.u, acc});

    auto check_tail = [&](const State& s) {
        const double frac = spectral::tail_energy_fraction(s.u);
        traj.max_tail_fraction = std::max(traj.max_tail_fraction, frac);
        if (guard == ResolutionGuard::strict && frac > kTailRefuseFraction)
            throw ResolutionInadequate(s.t, frac,
                                       "spectral tail fraction " + std::to_string(frac) +
                                           " exceeds " + std::to_string(kTailRefuseFraction));
    };
    check_tail(state);

    Integrand cur = measure(g, u_hat, state.u);
    const double t_snap = 1e-12 * std::max(1.0, T);

    for (double target : save_times) {
        while (state.t < target - t_snap) {
            const double dt = std::min(cfl_dt(state, params, safety), target - state.t);
            state = step(state, params, dt, hooks);
            Spectrum s_hat = spectral::analyze(state.u);
            const Integrand nxt = measure(g, s_hat, state.u);
            acc.grad_l2 += 0.5 * dt * (cur.grad + nxt.grad);
            acc.u_ux_l2 += 0.5 * dt * (cur.u_ux + nxt.u_ux);
            acc.uxxx_l2 += 0.5 * dt * (cur.uxxx + nxt.uxxx);
            acc.uxx_l2 += 0.5 * dt * (cur.uxx + nxt.uxx);
            acc.u_l2 += 0.5 * dt * (cur.u_l2 + nxt.u_l2);
            acc.P_u2 += 0.5 * dt * (cur.P_u2 + nxt.P_u2);
            cur = nxt;
        }
        state.t = target;
        traj.states.push_back({target, state.u, acc});
        check_tail(state);
    }
    return traj;
}

}  // namespace ohlab
