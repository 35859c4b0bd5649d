#pragma once

#include <string>

#include "ohlab/grid.hpp"
#include "ohlab/spectral.hpp"

namespace ohlab {

/// u0 with its primitive P0 and the admissibility constant
/// C0 = |u0|_2^2 + |u0|_4^4 + (beta+eps^2)|u0_x|_2^2 + beta^2|u0_xx|_2^2
///      + |beta * int u0 u0_x^2 dx|.
struct InitialData {
    Field u0;
    Field P0;
    double C0 = 0.0;
};

/// Zero-mean antiderivative of u; requires mean(u) ~ 0.
Field compute_P(const Field& u);

/// Zero-mean antiderivative of P (the second primitive of u).
Field compute_F(const Field& P);

/// Evaluate a named profile on a grid. Accepted specs:
///   "zero"
///   "sine:a,k"               a*sin(2*pi*k*x/L)        (defaults 1,1)
///   "two-mode:a1,k1,a2,k2"   a1*sin(2*pi*k1*x/L) + a2*cos(2*pi*k2*x/L)
///   "gauss-deriv:a,x0,w"     a * d/dx exp(-(d(x,x0)/w)^2), periodic distance
Field profile_field(const std::string& spec, const Grid& grid);

InitialData make_initial_data(const std::string& profile, const Grid& grid,
                              double eps, double beta);
InitialData make_initial_data(const Field& samples, double eps, double beta);

}  // namespace ohlab
