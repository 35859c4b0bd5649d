#include "ohlab/fv_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ohlab/spectral.hpp"

namespace ohlab {

namespace {

constexpr double kFvBlowupGuard = 1e6;

double flux(double u) { return 0.5 * u * u; }

double numerical_flux(double a, double b, FluxKind kind) {
    const double central = 0.5 * (flux(a) + flux(b));
    if (kind == FluxKind::central) return central;
    return central - 0.5 * std::max(std::abs(a), std::abs(b)) * (b - a);
}

void pin_mean(std::vector<double>& u) {
    double m = 0.0;
    for (double v : u) m += v;
    m /= static_cast<double>(u.size());
    for (double& v : u) v -= m;
}

std::vector<double> fv_rhs(const Grid& g, const std::vector<double>& u, double gamma,
                           FluxKind kind) {
    const int n = g.n;
    std::vector<double> f(static_cast<size_t>(n));  // f[j] = flux at interface j+1/2
    for (int j = 0; j < n; ++j)
        f[static_cast<size_t>(j)] = numerical_flux(u[static_cast<size_t>(j)],
                                                   u[static_cast<size_t>((j + 1) % n)], kind);
    std::vector<double> P;
    if (gamma != 0.0) P = fv_primitive(g, u);
    std::vector<double> rhs(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double fl = f[static_cast<size_t>((j + n - 1) % n)];
        const double fr = f[static_cast<size_t>(j)];
        rhs[static_cast<size_t>(j)] = -(fr - fl) / g.dx;
        if (gamma != 0.0) rhs[static_cast<size_t>(j)] += gamma * P[static_cast<size_t>(j)];
    }
    return rhs;
}

void guard_finite(const std::vector<double>& u, double t) {
    for (double v : u) {
        if (!std::isfinite(v)) throw BlowUp(t, "non-finite cell average at t = " + std::to_string(t));
        if (std::abs(v) > kFvBlowupGuard)
            throw BlowUp(t, "|u|_inf exceeded blow-up guard at t = " + std::to_string(t));
    }
}

// C-infinity bump on (-1,1), extended by zero.
double bump(double s) {
    const double r2 = s * s;
    if (r2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2));
}

double bump_deriv(double s) {
    const double r2 = s * s;
    if (r2 >= 1.0) return 0.0;
    const double d = 1.0 - r2;
    return bump(s) * (-2.0 * s / (d * d));
}

double wrapped(double x, double c, double L) {
    double d = std::fmod(x - c, L);
    if (d < -L / 2) d += L;
    if (d > L / 2) d -= L;
    return d;
}

}  // namespace

double EntropyPair::eta(double u) const {
    const double s = u - k;
    if (delta <= 0.0) return std::abs(s);
    return std::sqrt(s * s + delta * delta) - delta;
}

double EntropyPair::eta_prime(double u) const {
    const double s = u - k;
    if (delta <= 0.0) return s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
    return s / std::sqrt(s * s + delta * delta);
}

double EntropyPair::eta_second(double u) const {
    if (delta <= 0.0)
        throw Error("eta'' requires a smoothed entropy (delta > 0)");
    const double s = u - k;
    const double r = s * s + delta * delta;
    return delta * delta / (r * std::sqrt(r));
}

double EntropyPair::q(double u) const {
    const double s = u - k;
    if (delta <= 0.0) {
        const double sgn = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
        return sgn * (u * u - k * k) / 2.0;
    }
    const double root = std::sqrt(s * s + delta * delta);
    return 0.5 * s * root - 0.5 * delta * delta * std::asinh(s / delta) + k * (root - delta);
}

std::vector<double> fv_primitive(const Grid& grid, const std::vector<double>& u) {
    const int n = grid.n;
    std::vector<double> P(static_cast<size_t>(n));
    double running = 0.0;
    for (int j = 0; j < n; ++j) {
        P[static_cast<size_t>(j)] = grid.dx * (running + 0.5 * u[static_cast<size_t>(j)]);
        running += u[static_cast<size_t>(j)];
    }
    pin_mean(P);
    return P;
}

State fv_step(const State& state, double gamma, double dt, FluxKind kind) {
    const Grid& g = state.u.grid;
    const std::vector<double>& u = state.u.values;

    std::vector<double> r1 = fv_rhs(g, u, gamma, kind);
    std::vector<double> s1(u.size());
    for (size_t j = 0; j < u.size(); ++j) s1[j] = u[j] + dt * r1[j];
    pin_mean(s1);

    std::vector<double> r2 = fv_rhs(g, s1, gamma, kind);
    std::vector<double> out(u.size());
    for (size_t j = 0; j < u.size(); ++j) out[j] = 0.5 * u[j] + 0.5 * (s1[j] + dt * r2[j]);
    pin_mean(out);

    guard_finite(out, state.t + dt);
    return State{state.t + dt, Field(g, std::move(out))};
}

Trajectory fv_simulate(const Field& u0, double gamma, double T, double save_every,
                       FluxKind kind, double cfl) {
    if (!(T > 0.0) || !(save_every > 0.0) || !(cfl > 0.0))
        throw Error("fv_simulate requires T > 0, save_every > 0, cfl > 0");

    const Grid& g = u0.grid;
    State state{0.0, u0};
    pin_mean(state.u.values);

    std::vector<double> save_times;
    for (int i = 1; i * save_every < T - 1e-12 * T; ++i) save_times.push_back(i * save_every);
    save_times.push_back(T);

    Trajectory traj;
    traj.grid = g;
    traj.states.push_back({0.0, state.u, {}});

    const double t_snap = 1e-12 * std::max(1.0, T);
    for (double target : save_times) {
        while (state.t < target - t_snap) {
            const double umax = std::max(1e-12, spectral::norm_linf(state.u));
            const double dt = std::min(cfl * g.dx / umax, target - state.t);
            state = fv_step(state, gamma, dt, kind);
        }
        state.t = target;
        traj.states.push_back({target, state.u, {}});
    }
    return traj;
}

double entropy_residual(const Trajectory& traj, double gamma, double k,
                        double mollifier_width) {
    const double w = mollifier_width;
    if (traj.states.size() < 2) throw InsufficientSampling("trajectory has fewer than two states");
    const Grid& g = traj.grid;
    const size_t ns = traj.states.size();

    double max_spacing = 0.0;
    for (size_t i = 0; i + 1 < ns; ++i)
        max_spacing = std::max(max_spacing, traj.states[i + 1].t - traj.states[i].t);
    if (max_spacing > w / 4 + 1e-12)
        throw InsufficientSampling("save spacing " + std::to_string(max_spacing) +
                                   " exceeds mollifier_width/4");

    const double T = traj.back().t;
    if (T < 2 * w) throw InsufficientSampling("trajectory too short for the bump family");

    EntropyPair pair{k, 0.0};

    // Per-save pointwise entropy data.
    std::vector<std::vector<double>> eta_v(ns), q_v(ns), src_v(ns);
    for (size_t i = 0; i < ns; ++i) {
        const auto& u = traj.states[i].u.values;
        std::vector<double> P;
        if (gamma != 0.0) P = fv_primitive(g, u);
        eta_v[i].resize(u.size());
        q_v[i].resize(u.size());
        src_v[i].resize(u.size());
        for (size_t j = 0; j < u.size(); ++j) {
            eta_v[i][j] = pair.eta(u[j]);
            q_v[i][j] = pair.q(u[j]);
            src_v[i][j] = gamma != 0.0 ? gamma * pair.eta_prime(u[j]) * P[j] : 0.0;
        }
    }

    // 4-point Gauss-Legendre on [0,1].
    static constexpr std::array<double, 4> gl_x = {0.06943184420297371, 0.33000947820757187,
                                                   0.6699905217924281, 0.9305681557970262};
    static constexpr std::array<double, 4> gl_w = {0.1739274225687269, 0.3260725774312731,
                                                   0.3260725774312731, 0.1739274225687269};

    std::vector<double> tc_list;
    for (double tc = w; tc <= T - w + 1e-12; tc += w / 2) tc_list.push_back(tc);
    std::vector<double> xc_list;
    for (double xc = 0.0; xc < g.length - 1e-12; xc += w / 2) xc_list.push_back(xc);

    double worst = -std::numeric_limits<double>::infinity();

    for (double tc : tc_list) {
        // Per interval: int Psi dt, and GL coefficients against the linear
        // interpolant of the data sums, with Psi(t) = bump((t - tc)/w).
        const size_t ni = ns - 1;
        std::vector<double> I0(ni, 0.0), c0(ni, 0.0), c1(ni, 0.0);
        for (size_t i = 0; i < ni; ++i) {
            const double t0 = traj.states[i].t, t1 = traj.states[i + 1].t;
            if (t1 <= tc - w || t0 >= tc + w) continue;
            const double h = t1 - t0;
            for (size_t gidx = 0; gidx < 4; ++gidx) {
                const double theta = gl_x[gidx];
                const double psi = bump((t0 + theta * h - tc) / w);
                const double ww = gl_w[gidx] * h;
                I0[i] += ww * psi;
                c0[i] += ww * (1.0 - theta) * psi;
                c1[i] += ww * theta * psi;
            }
        }

        for (double xc : xc_list) {
            // x-weights of the bump and its derivative on the support.
            std::vector<int> nodes;
            std::vector<double> wphi, wdphi;
            for (int j = 0; j < g.n; ++j) {
                const double d = wrapped(g.node(j), xc, g.length);
                if (std::abs(d) >= w) continue;
                nodes.push_back(j);
                wphi.push_back(bump(d / w) * g.dx);
                wdphi.push_back(bump_deriv(d / w) / w * g.dx);
            }
            if (nodes.empty()) continue;

            // A = int eta phi_x-part, B = int q dphi_x, C = int src phi.
            std::vector<double> A(ns, 0.0), B(ns, 0.0), C(ns, 0.0);
            for (size_t i = 0; i < ns; ++i) {
                double a = 0.0, b = 0.0, c = 0.0;
                for (size_t m = 0; m < nodes.size(); ++m) {
                    const size_t j = static_cast<size_t>(nodes[m]);
                    a += eta_v[i][j] * wphi[m];
                    b += q_v[i][j] * wdphi[m];
                    c += src_v[i][j] * wphi[m];
                }
                A[i] = a;
                B[i] = b;
                C[i] = c;
            }

            // -int A Psi' dt integrates by parts to sum (dA/dt) int Psi dt;
            // the q and source terms use the GL coefficients directly.
            double res = 0.0;
            for (size_t i = 0; i + 1 < ns; ++i) {
                if (I0[i] == 0.0 && c0[i] == 0.0 && c1[i] == 0.0) continue;
                const double h = traj.states[i + 1].t - traj.states[i].t;
                res += (A[i + 1] - A[i]) / h * I0[i];
                res -= B[i] * c0[i] + B[i + 1] * c1[i];
                res -= C[i] * c0[i] + C[i + 1] * c1[i];
            }
            worst = std::max(worst, res);
        }
    }
    return worst;
}

}  // namespace ohlab
