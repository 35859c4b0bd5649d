#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ohlab/grid.hpp"

namespace ohlab {

struct CouplingRule {
    double c = 1.0;
    double p = 2.0;
};

/// (eps, beta, gamma) with an optional coupling rule beta = c * eps^p.
struct RegParams {
    double eps = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    std::optional<CouplingRule> coupling;

    static RegParams coupled(double eps, double c, double p, double gamma) {
        RegParams out;
        out.eps = eps;
        out.beta = c * std::pow(eps, p);
        out.gamma = gamma;
        out.coupling = CouplingRule{c, p};
        return out;
    }

    void validate() const {
        if (eps < 0.0 || beta < 0.0)
            throw Error("eps and beta must be non-negative");
        if (coupling) {
            const double want = coupling->c * std::pow(eps, coupling->p);
            if (std::abs(beta - want) > 1e-12 * std::max(std::abs(want), 1e-300))
                throw Error("beta inconsistent with coupling rule beta = c*eps^p");
        }
    }

    /// Regime classification of the coupling exponent.
    std::string regime() const {
        if (!coupling) return "none";
        if (coupling->p > 2.0) return "o(eps^2)";
        if (coupling->p == 2.0) return "O(eps^2)";
        return "outside";
    }
};

struct State {
    double t = 0.0;
    Field u;
};

/// Running time integrals, accumulated per step with the trapezoid rule.
struct TimeIntegrals {
    double grad_l2 = 0.0;   // int_0^t |u_x|_2^2 ds
    double u_ux_l2 = 0.0;   // int_0^t |u u_x|_2^2 ds
    double uxxx_l2 = 0.0;   // int_0^t |u_xxx|_2^2 ds
    double uxx_l2 = 0.0;    // int_0^t |u_xx|_2^2 ds
    double u_l2 = 0.0;      // int_0^t |u|_2^2 ds
    double P_u2 = 0.0;      // int_0^t int P u^2 dx ds
};

struct Sample {
    double t = 0.0;
    Field u;
    TimeIntegrals integrals;
};

/// Time-stamped states at save times plus the accumulated integrals.
struct Trajectory {
    Grid grid;
    std::vector<Sample> states;
    double max_tail_fraction = 0.0;

    const Sample& front() const { return states.front(); }
    const Sample& back() const { return states.back(); }
    size_t size() const { return states.size(); }
    double duration() const { return states.empty() ? 0.0 : states.back().t; }
};

}  // namespace ohlab
