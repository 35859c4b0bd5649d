#pragma once

#include <filesystem>
#include <string>

#include "ohlab/convergence.hpp"
#include "ohlab/trajectory.hpp"

namespace ohlab {

/// Run metadata stored beside the trajectory files.
struct RunMeta {
    std::string kind = "regularized";  // "regularized" | "limit"
    std::string profile;
    RegParams params;
    double T = 0.0;
    double save_every = 0.0;
    double safety = 0.4;
    bool fields = true;
};

/// Writes run.json, traj.csv and (when meta.fields) u.bin into dir.
/// traj.csv columns: t,l2,l4,linf,grad_l2_int,u_ux_l2_int,uxxx_l2_int,
/// uxx_l2_int,u_l2_int,P_u2_int. u.bin: 16-byte header (8-byte magic
/// "OSTR1\0\0\0", u32 n, u32 reserved) then one row of n little-endian
/// float64 per save time.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const RunMeta& meta);

struct LoadedRun {
    Trajectory traj;
    RunMeta meta;
};

/// Re-reads a trajectory directory; throws MissingData on absent or
/// inconsistent files.
LoadedRun read_trajectory(const std::filesystem::path& dir);

/// table.csv, table.json (with embedded audit reports) and per-norm
/// gnuplot files err_<norm>.dat (eps vs error).
void write_convergence_table(const std::filesystem::path& dir, const ConvergenceTable& table);

}  // namespace ohlab
