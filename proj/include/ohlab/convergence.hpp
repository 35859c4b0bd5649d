#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ohlab/estimates.hpp"
#include "ohlab/trajectory.hpp"

namespace ohlab {

/// Space-time comparison box; x1 < x0 means the full torus.
struct Window {
    double t0 = 0.0;
    double t1 = 0.0;
    double x0 = 0.0;
    double x1 = -1.0;
};

struct ErrorRecord {
    double u_l1 = 0.0;
    double u_l2 = 0.0;
    double P_linf = 0.0;
    double P_l2 = 0.0;
    double Px_linf = 0.0;
};

/// Norms of a - b over the window. Grid mismatch is handled by spectral
/// resampling of the coarser trajectory onto the finer grid; b is linearly
/// interpolated in t onto a's save times when the times differ.
ErrorRecord compare_trajectories(const Trajectory& a, const Trajectory& b,
                                 const Window& window);

struct SweepConfig {
    std::vector<double> eps_list;  // strictly decreasing
    CouplingRule coupling{1.0, 2.0};
    double gamma = 1.0;
    double T = 1.0;
    Grid grid;
    std::string profile = "sine:1,1";
    std::string reference = "self";  // "self" | "limit"
    double save_every = 0.0;         // 0 -> T/200
    double safety = 0.4;
    Window window;                   // t1 == 0 -> [0.1T, T]
    double min_ratio = 1.2;
    int threads = 1;
    double dissipation_k = 0.0;
    double dissipation_delta = 1e-3;

    void validate() const;
    double effective_save_every() const { return save_every > 0.0 ? save_every : T / 200.0; }
    Window effective_window() const {
        Window w = window;
        if (w.t1 <= w.t0) { w.t0 = 0.1 * T; w.t1 = T; }
        return w;
    }
};

struct SweepRow {
    double eps = 0.0;
    double beta = 0.0;
    bool blew_up = false;
    double blowup_time = 0.0;
    bool is_reference = false;
    ErrorRecord err;
    double observed_order = std::numeric_limits<double>::quiet_NaN();
    double C0 = 0.0;
    FamilyBounds families;
    DissipationTerms dissipation;
    AuditReport audit;
};

struct ConvergenceTable {
    SweepConfig cfg;
    std::vector<SweepRow> rows;  // ordered by decreasing eps

    /// err_u_l1 strictly decreasing with at least min_ratio per step and
    /// err_P_linf non-increasing, over the non-reference, non-blown rows.
    bool monotone_pass(double min_ratio) const;
    size_t blown_count() const;
};

ConvergenceTable run_sweep(const SweepConfig& cfg);

}  // namespace ohlab
