#include "ohlab/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "ohlab/fv_solver.hpp"
#include "ohlab/reg_solver.hpp"
#include "ohlab/spectral.hpp"

namespace ohlab {

namespace {

// Sample of one trajectory interpolated onto time t and grid `fine`.
Field field_at(const Trajectory& traj, double t, const Grid& fine) {
    const auto& st = traj.states;
    if (t < st.front().t - 1e-12 || t > st.back().t + 1e-12)
        throw IncompatibleWindows("time " + std::to_string(t) + " outside trajectory range");
    size_t hi = 0;
    while (hi < st.size() && st[hi].t < t - 1e-12) ++hi;
    if (hi >= st.size()) hi = st.size() - 1;
    const Field* exact = nullptr;
    if (std::abs(st[hi].t - t) <= 1e-12) exact = &st[hi].u;
    Field out = exact ? *exact : st[hi].u;
    if (!exact) {
        const size_t lo = hi - 1;
        const double theta = (t - st[lo].t) / (st[hi].t - st[lo].t);
        out = st[lo].u;
        for (int j = 0; j < out.size(); ++j)
            out[j] = (1.0 - theta) * st[lo].u[j] + theta * st[hi].u[j];
    }
    return spectral::resample(out, fine);
}

}  // namespace

ErrorRecord compare_trajectories(const Trajectory& a, const Trajectory& b,
                                 const Window& window) {
    if (std::abs(a.grid.length - b.grid.length) > 1e-12 * a.grid.length)
        throw IncompatibleWindows("domain lengths differ");
    if (window.t1 <= window.t0) throw IncompatibleWindows("empty time window");
    if (window.t0 < a.front().t - 1e-12 || window.t1 > a.back().t + 1e-12 ||
        window.t0 < b.front().t - 1e-12 || window.t1 > b.back().t + 1e-12)
        throw IncompatibleWindows("window exceeds a trajectory's time range");

    const Grid fine = a.grid.n >= b.grid.n ? a.grid : b.grid;

    std::vector<double> times;
    for (const auto& s : a.states)
        if (s.t >= window.t0 - 1e-12 && s.t <= window.t1 + 1e-12) times.push_back(s.t);
    if (times.size() < 2) throw IncompatibleWindows("fewer than two save times in window");

    const bool full_torus = window.x1 < window.x0;
    auto in_x = [&](double x) {
        return full_torus || (x >= window.x0 - 1e-12 && x <= window.x1 + 1e-12);
    };

    ErrorRecord rec;
    double int_l1 = 0.0, int_l2 = 0.0, int_P_l2 = 0.0;
    for (size_t i = 0; i < times.size(); ++i) {
        const Field ua = field_at(a, times[i], fine);
        const Field ub = field_at(b, times[i], fine);
        const Field Pa = compute_P(ua);
        const Field Pb = compute_P(ub);
        double l1 = 0.0, l2 = 0.0, pl2 = 0.0;
        for (int j = 0; j < fine.n; ++j) {
            if (!in_x(fine.node(j))) continue;
            const double du = ua[j] - ub[j];
            const double dP = Pa[j] - Pb[j];
            l1 += std::abs(du);
            l2 += du * du;
            pl2 += dP * dP;
            rec.P_linf = std::max(rec.P_linf, std::abs(dP));
            rec.Px_linf = std::max(rec.Px_linf, std::abs(du));
        }
        // composite trapezoid weight in t
        double wt = 0.0;
        if (i > 0) wt += 0.5 * (times[i] - times[i - 1]);
        if (i + 1 < times.size()) wt += 0.5 * (times[i + 1] - times[i]);
        int_l1 += wt * l1 * fine.dx;
        int_l2 += wt * l2 * fine.dx;
        int_P_l2 += wt * pl2 * fine.dx;
    }
    rec.u_l1 = int_l1;
    rec.u_l2 = std::sqrt(int_l2);
    rec.P_l2 = std::sqrt(int_P_l2);
    return rec;
}

void SweepConfig::validate() const {
    if (eps_list.empty()) throw Error("sweep needs at least one eps");
    for (size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (!(eps_list[i] > eps_list[i + 1]))
            throw Error("eps_list must be strictly decreasing");
    for (double e : eps_list)
        if (!(e > 0.0)) throw Error("eps values must be positive");
    if (!(coupling.c > 0.0) || !(coupling.p > 0.0))
        throw Error("coupling requires c > 0 and p > 0");
    if (!(T > 0.0)) throw Error("sweep horizon T must be positive");
    if (reference != "self" && reference != "limit")
        throw Error("reference must be 'self' or 'limit'");
}

bool ConvergenceTable::monotone_pass(double min_ratio) const {
    std::vector<const SweepRow*> live;
    for (const auto& r : rows)
        if (!r.blew_up && !r.is_reference) live.push_back(&r);
    for (size_t i = 0; i + 1 < live.size(); ++i) {
        if (!(live[i]->err.u_l1 >= live[i + 1]->err.u_l1 * min_ratio) ||
            !(live[i]->err.u_l1 > live[i + 1]->err.u_l1))
            return false;
        if (live[i + 1]->err.P_linf > live[i]->err.P_linf * (1.0 + 1e-12)) return false;
    }
    return !live.empty();
}

size_t ConvergenceTable::blown_count() const {
    size_t c = 0;
    for (const auto& r : rows)
        if (r.blew_up) ++c;
    return c;
}

ConvergenceTable run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const double save_every = cfg.effective_save_every();
    const Window window = cfg.effective_window();

    ConvergenceTable table;
    table.cfg = cfg;
    table.rows.resize(cfg.eps_list.size());

    std::vector<std::optional<Trajectory>> trajs(cfg.eps_list.size());
    std::vector<RegParams> params(cfg.eps_list.size());

    // Rows run independently; results are assembled in eps order so the
    // thread count never changes any reported number.
    std::mutex next_mutex;
    size_t next = 0;
    auto worker = [&]() {
        for (;;) {
            size_t i;
            {
                std::lock_guard lock(next_mutex);
                if (next >= cfg.eps_list.size()) return;
                i = next++;
            }
            SweepRow& row = table.rows[i];
            row.eps = cfg.eps_list[i];
            params[i] = RegParams::coupled(row.eps, cfg.coupling.c, cfg.coupling.p, cfg.gamma);
            row.beta = params[i].beta;
            try {
                const InitialData init =
                    make_initial_data(cfg.profile, cfg.grid, row.eps, row.beta);
                row.C0 = init.C0;
                trajs[i] = simulate(init, params[i], cfg.T, save_every, cfg.safety, {},
                                    ResolutionGuard::warn);
            } catch (const BlowUp& b) {
                row.blew_up = true;
                row.blowup_time = b.t;
            }
        }
    };
    {
        const int nthreads = std::max(1, cfg.threads);
        std::vector<std::thread> pool;
        for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    // Reference: finest non-blown run, or the limit solver at 4x resolution.
    std::optional<Trajectory> reference;
    if (cfg.reference == "limit") {
        const Grid fine = make_grid(4 * cfg.grid.n, cfg.grid.length);
        Field u0 = profile_field(cfg.profile, fine);
        reference = fv_simulate(u0, cfg.gamma, cfg.T, save_every);
    } else {
        for (size_t i = cfg.eps_list.size(); i-- > 0;) {
            if (trajs[i]) {
                reference = *trajs[i];
                table.rows[i].is_reference = true;
                break;
            }
        }
    }

    const EntropyPair entropy{cfg.dissipation_k, cfg.dissipation_delta};
    for (size_t i = 0; i < table.rows.size(); ++i) {
        SweepRow& row = table.rows[i];
        if (!trajs[i]) continue;
        row.families = audit_families(*trajs[i], params[i]);
        row.dissipation = dissipation_breakdown(*trajs[i], params[i], entropy);
        row.audit = audit_regularized(*trajs[i], params[i]);
        if (reference && !row.is_reference)
            row.err = compare_trajectories(*trajs[i], *reference, window);
    }
    for (size_t i = 0; i + 1 < table.rows.size(); ++i) {
        const SweepRow& a = table.rows[i];
        const SweepRow& b = table.rows[i + 1];
        if (a.blew_up || b.blew_up || a.is_reference || b.is_reference) continue;
        if (a.err.u_l1 > 0.0 && b.err.u_l1 > 0.0)
            table.rows[i].observed_order = std::log2(a.err.u_l1 / b.err.u_l1);
    }
    return table;
}

}  // namespace ohlab
