#include "ohlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace ohlab::spectral {

namespace {

// FFTW's planner is not thread-safe; plan creation is serialized globally.
// Executions run on per-thread cached plans with their own buffers, so the
// public operations stay pure and freely concurrent.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanSet {
    int n;
    double* real_buf;
    fftw_complex* cplx_buf;
    fftw_plan r2c;
    fftw_plan c2r;

    explicit PlanSet(int n_) : n(n_) {
        real_buf = fftw_alloc_real(static_cast<size_t>(n));
        cplx_buf = fftw_alloc_complex(static_cast<size_t>(n / 2 + 1));
        std::lock_guard lock(planner_mutex());
        r2c = fftw_plan_dft_r2c_1d(n, real_buf, cplx_buf, FFTW_ESTIMATE);
        c2r = fftw_plan_dft_c2r_1d(n, cplx_buf, real_buf, FFTW_ESTIMATE);
    }
    ~PlanSet() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(r2c);
        fftw_destroy_plan(c2r);
        fftw_free(real_buf);
        fftw_free(cplx_buf);
    }
    PlanSet(const PlanSet&) = delete;
    PlanSet& operator=(const PlanSet&) = delete;
};

PlanSet& plans_for(int n) {
    thread_local std::unordered_map<int, std::unique_ptr<PlanSet>> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<PlanSet>(n)).first;
    return *it->second;
}

double wavenumber(const Grid& g, int k) {
    return 2.0 * std::numbers::pi * k / g.length;
}

}  // namespace

Spectrum analyze(const Field& f) {
    auto& p = plans_for(f.grid.n);
    std::memcpy(p.real_buf, f.values.data(), sizeof(double) * f.values.size());
    fftw_execute(p.r2c);
    Spectrum s(static_cast<size_t>(f.grid.n / 2 + 1));
    for (size_t k = 0; k < s.size(); ++k)
        s[k] = {p.cplx_buf[k][0], p.cplx_buf[k][1]};
    return s;
}

Field synthesize(const Grid& g, const Spectrum& s) {
    auto& p = plans_for(g.n);
    for (size_t k = 0; k < s.size(); ++k) {
        p.cplx_buf[k][0] = s[k].real();
        p.cplx_buf[k][1] = s[k].imag();
    }
    fftw_execute(p.c2r);
    Field out(g);
    const double scale = 1.0 / g.n;
    for (int j = 0; j < g.n; ++j) out[j] = p.real_buf[j] * scale;
    return out;
}

void derivative_spectrum(const Grid& g, Spectrum& s, int order) {
    if (order < 1 || order > 3)
        throw Error("derivative order must be 1, 2 or 3, got " + std::to_string(order));
    const int half = g.n / 2;
    for (int k = 0; k <= half; ++k) {
        const double kp = wavenumber(g, k);
        std::complex<double> m;
        switch (order) {
            case 1: m = {0.0, kp}; break;
            case 2: m = {-kp * kp, 0.0}; break;
            default: m = {0.0, -kp * kp * kp}; break;
        }
        if (k == half && order % 2 == 1) m = 0.0;
        s[static_cast<size_t>(k)] *= m;
    }
}

Field derivative(const Field& f, int order) {
    Spectrum s = analyze(f);
    derivative_spectrum(f.grid, s, order);
    return synthesize(f.grid, s);
}

void antiderivative_spectrum(const Grid& g, Spectrum& s) {
    const int half = g.n / 2;
    s[0] = 0.0;
    for (int k = 1; k <= half; ++k) {
        const double kp = wavenumber(g, k);
        s[static_cast<size_t>(k)] *= std::complex<double>{0.0, -1.0 / kp};
    }
    s[static_cast<size_t>(half)] = 0.0;
}

Field antiderivative_zero_mean(const Field& f) {
    const double m = mean(f);
    if (std::abs(m) > mean_tolerance(f))
        throw NonZeroMean("antiderivative requires zero-mean input, mean = " + std::to_string(m));
    Spectrum s = analyze(f);
    antiderivative_spectrum(f.grid, s);
    return synthesize(f.grid, s);
}

double integral(const Field& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v;
    return acc * f.grid.dx;
}

double mean(const Field& f) { return integral(f) / f.grid.length; }

double norm_l1(const Field& f) {
    double acc = 0.0;
    for (double v : f.values) acc += std::abs(v);
    return acc * f.grid.dx;
}

double norm_l2(const Field& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v * v;
    return std::sqrt(acc * f.grid.dx);
}

double norm_l4(const Field& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v * v * v * v;
    return std::pow(acc * f.grid.dx, 0.25);
}

double norm_linf(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double mean_tolerance(const Field& f) { return 1e-10 * norm_linf(f) + 1e-14; }

int dealias_cutoff(int n) { return n / 3; }

void truncate(const Grid& g, Spectrum& s) {
    const int kcut = dealias_cutoff(g.n);
    for (int k = kcut + 1; k <= g.n / 2; ++k) s[static_cast<size_t>(k)] = 0.0;
}

double spectral_energy(const Grid& g, const Spectrum& s) {
    const int half = g.n / 2;
    double acc = std::norm(s[0]);
    for (int k = 1; k < half; ++k) acc += 2.0 * std::norm(s[static_cast<size_t>(k)]);
    acc += std::norm(s[static_cast<size_t>(half)]);
    return acc * g.dx / g.n;
}

double tail_energy_fraction(const Field& f) {
    Spectrum s = analyze(f);
    const int kcut = dealias_cutoff(f.grid.n);
    const int kstart = (2 * kcut) / 3 + 1;
    double total = 0.0, tail = 0.0;
    for (int k = 1; k <= kcut; ++k) {
        const double e = std::norm(s[static_cast<size_t>(k)]);
        total += e;
        if (k >= kstart) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

Field resample(const Field& f, const Grid& fine) {
    if (fine.n == f.grid.n) return f;
    if (fine.n < f.grid.n)
        throw Error("resample targets a finer grid; got " + std::to_string(fine.n) +
                    " < " + std::to_string(f.grid.n));
    if (std::abs(fine.length - f.grid.length) > 1e-12 * f.grid.length)
        throw Error("resample requires matching domain lengths");
    Spectrum s = analyze(f);
    Spectrum padded(static_cast<size_t>(fine.n / 2 + 1), 0.0);
    const double scale = static_cast<double>(fine.n) / f.grid.n;
    for (int k = 0; k <= f.grid.n / 2; ++k)
        padded[static_cast<size_t>(k)] = s[static_cast<size_t>(k)] * scale;
    return synthesize(fine, padded);
}

}  // namespace ohlab::spectral
