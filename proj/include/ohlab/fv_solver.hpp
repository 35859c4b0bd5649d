#pragma once

#include <vector>

#include "ohlab/trajectory.hpp"

namespace ohlab {

/// Kruzhkov entropy pair for f(u) = u^2/2, optionally delta-smoothed so
/// that eta'' exists: eta(u) = sqrt((u-k)^2 + delta^2) - delta.
struct EntropyPair {
    double k = 0.0;
    double delta = 0.0;

    double eta(double u) const;
    double eta_prime(double u) const;
    double eta_second(double u) const;  // requires delta > 0
    double q(double u) const;           // int_k^u f'(s) eta'(s) ds
};

enum class FluxKind { rusanov, central };

/// Zero-mean primitive of the cell averages at cell centers (midpoint
/// cumulative quadrature).
std::vector<double> fv_primitive(const Grid& grid, const std::vector<double>& u);

/// One SSP-RK2 step of u_t + (u^2/2)_x = gamma*P on the torus with the
/// Rusanov flux; the source is evaluated per stage and the mean re-pinned
/// to 0 after each stage. The central flux variant is a deliberately
/// non-entropic negative control.
State fv_step(const State& state, double gamma, double dt, FluxKind kind = FluxKind::rusanov);

/// CFL-adaptive integration saving at multiples of save_every and at T.
Trajectory fv_simulate(const Field& u0, double gamma, double T, double save_every,
                       FluxKind kind = FluxKind::rusanov, double cfl = 0.4);

/// Max over a family of smooth space-time bumps phi >= 0 of
///   int int [ -eta(u) phi_t - q(u) phi_x - gamma eta'(u) P phi ] dx dt.
/// Positive values beyond tolerance indicate an entropy violation.
/// Requires save spacing <= mollifier_width/4.
double entropy_residual(const Trajectory& traj, double gamma, double k,
                        double mollifier_width);

}  // namespace ohlab
