#pragma once

#include <functional>

#include "ohlab/nonlocal.hpp"
#include "ohlab/spectral.hpp"
#include "ohlab/trajectory.hpp"

namespace ohlab {

/// Behaviour of the spectral-tail resolution diagnostic during simulate().
enum class ResolutionGuard { off, warn, strict };

/// Solver switches. Defaults reproduce the production scheme; the other
/// settings exist for verification runs (forced manufactured solutions,
/// linear-only propagation, dealiasing negative controls).
struct StepHooks {
    bool nonlinearity = true;
    bool dealias = true;
    std::function<double(double t, double x)> forcing;  // added to the RHS
};

inline constexpr double kBlowupGuard = 1e6;
inline constexpr double kTailRefuseFraction = 1e-6;

/// Exact per-mode factor exp((beta*(ik)^3 - eps*k^2) dt) for the linear part
/// of u_t = beta u_xxx + eps u_xx, i.e. exp(-eps k^2 dt) * e^{-i beta k^3 dt}
/// on the k >= 0 half-spectrum. Modulus <= 1 for eps >= 0 and dt >= 0.
spectral::Spectrum linear_propagator(const Grid& grid, const RegParams& params, double dt);

/// One integrating-factor RK4 step of
///   u_t + u u_x - beta u_xxx = gamma P + eps u_xx,  P_x = u, mean(P) = 0.
/// The quadratic term is dealiased by the 2/3 rule; the zero mode is pinned
/// to 0 after the step. Throws BlowUp on non-finite output or |u|_inf
/// beyond the guard.
State step(const State& state, const RegParams& params, double dt,
           const StepHooks& hooks = {});

/// dt = safety * dx / max(1, |u|_inf); the exactly-integrated linear terms
/// impose no constraint.
double cfl_dt(const State& state, const RegParams& params, double safety);

/// CFL-adaptive integration from t=0 to T, saving at multiples of
/// save_every (and at T). Running integrals are accumulated every step.
Trajectory simulate(const InitialData& init, const RegParams& params, double T,
                    double save_every, double safety, const StepHooks& hooks = {},
                    ResolutionGuard guard = ResolutionGuard::warn);

}  // namespace ohlab
