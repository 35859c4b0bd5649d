#include "ohlab/nonlocal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace ohlab {

namespace {

std::vector<double> parse_args(const std::string& spec) {
    std::vector<double> out;
    auto colon = spec.find(':');
    if (colon == std::string::npos) return out;
    std::istringstream in(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw InvalidProfile("bad numeric argument '" + tok + "' in profile '" + spec + "'");
        }
    }
    return out;
}

double wrapped_distance(double x, double x0, double L) {
    double d = std::fmod(x - x0, L);
    if (d < -L / 2) d += L;
    if (d > L / 2) d -= L;
    return d;
}

}  // namespace

Field compute_P(const Field& u) { return spectral::antiderivative_zero_mean(u); }

Field compute_F(const Field& P) { return spectral::antiderivative_zero_mean(P); }

Field profile_field(const std::string& spec, const Grid& grid) {
    const std::string name = spec.substr(0, spec.find(':'));
    const auto args = parse_args(spec);
    const double L = grid.length;
    const double two_pi = 2.0 * std::numbers::pi;

    if (name == "zero") {
        return Field(grid);
    }
    if (name == "sine") {
        const double a = args.size() > 0 ? args[0] : 1.0;
        const double k = args.size() > 1 ? args[1] : 1.0;
        return sample(grid, [&](double x) { return a * std::sin(two_pi * k * x / L); });
    }
    if (name == "two-mode") {
        if (args.size() != 4)
            throw InvalidProfile("two-mode takes a1,k1,a2,k2; got '" + spec + "'");
        const double a1 = args[0], k1 = args[1], a2 = args[2], k2 = args[3];
        return sample(grid, [&](double x) {
            return a1 * std::sin(two_pi * k1 * x / L) + a2 * std::cos(two_pi * k2 * x / L);
        });
    }
    if (name == "gauss-deriv") {
        if (args.size() != 3)
            throw InvalidProfile("gauss-deriv takes a,x0,w; got '" + spec + "'");
        const double a = args[0], x0 = args[1], w = args[2];
        if (!(w > 0.0)) throw InvalidProfile("gauss-deriv width must be positive");
        Field bump = sample(grid, [&](double x) {
            const double d = wrapped_distance(x, x0, L) / w;
            return std::exp(-d * d);
        });
        Field out = spectral::derivative(bump, 1);
        for (double& v : out.values) v *= a;
        return out;
    }
    throw InvalidProfile("unknown profile '" + spec + "'");
}

InitialData make_initial_data(const Field& samples, double eps, double beta) {
    for (double v : samples.values)
        if (!std::isfinite(v)) throw InvalidProfile("initial profile has non-finite samples");

    Field u0 = samples;
    const double m = spectral::mean(u0);
    for (double& v : u0.values) v -= m;

    Field P0 = spectral::antiderivative_zero_mean(u0);
    Field ux = spectral::derivative(u0, 1);
    Field uxx = spectral::derivative(u0, 2);

    const double l2 = spectral::norm_l2(u0);
    const double l4 = spectral::norm_l4(u0);
    const double ux_l2 = spectral::norm_l2(ux);
    const double uxx_l2 = spectral::norm_l2(uxx);
    double u_ux2 = 0.0;
    for (int j = 0; j < u0.size(); ++j) u_ux2 += u0[j] * ux[j] * ux[j];
    u_ux2 *= u0.grid.dx;

    const double C0 = l2 * l2 + l4 * l4 * l4 * l4 + (beta + eps * eps) * ux_l2 * ux_l2 +
                      beta * beta * uxx_l2 * uxx_l2 + std::abs(beta * u_ux2);

    const double p0_l2 = spectral::norm_l2(P0);
    if (!std::isfinite(p0_l2) || !std::isfinite(C0))
        throw InvalidProfile("initial data produced a non-finite admissibility constant");

    return InitialData{std::move(u0), std::move(P0), C0};
}

InitialData make_initial_data(const std::string& profile, const Grid& grid,
                              double eps, double beta) {
    return make_initial_data(profile_field(profile, grid), eps, beta);
}

}  // namespace ohlab
