#pragma once

#include <complex>
#include <vector>

#include "ohlab/grid.hpp"

namespace ohlab::spectral {

/// Half-complex spectrum of a real field: n/2+1 coefficients of the
/// unnormalized forward DFT (mode k multiplies e^{+i 2*pi*k*x/L} after
/// division by n in synthesize).
using Spectrum = std::vector<std::complex<double>>;

Spectrum analyze(const Field& f);
Field synthesize(const Grid& g, const Spectrum& s);

/// Spectral derivative of order 1..3; the Nyquist mode is zeroed for odd
/// orders.
Field derivative(const Field& f, int order);

/// In-place derivative on a spectrum (same convention as derivative()).
void derivative_spectrum(const Grid& g, Spectrum& s, int order);

/// Zero-mean antiderivative: g with derivative(g,1) == f and mean(g) == 0.
/// Requires |mean(f)| <= mean_tolerance(f); throws NonZeroMean otherwise.
Field antiderivative_zero_mean(const Field& f);
void antiderivative_spectrum(const Grid& g, Spectrum& s);

double integral(const Field& f);
double mean(const Field& f);
double norm_l1(const Field& f);
double norm_l2(const Field& f);
double norm_l4(const Field& f);
double norm_linf(const Field& f);

/// Admissibility tolerance for "mean zero": 1e-10*|f|_inf + 1e-14.
double mean_tolerance(const Field& f);

/// Largest retained mode under the 2/3 rule.
int dealias_cutoff(int n);

/// Zero all modes above dealias_cutoff.
void truncate(const Grid& g, Spectrum& s);

/// dx-weighted spectral energy (equals norm_l2(f)^2 by Parseval).
double spectral_energy(const Grid& g, const Spectrum& s);

/// Fraction of spectral energy held by the top third of the retained
/// (dealiased) band. Resolution-adequacy diagnostic.
double tail_energy_fraction(const Field& f);

/// Band-limited interpolation onto a finer grid with the same length.
Field resample(const Field& f, const Grid& fine);

}  // namespace ohlab::spectral
