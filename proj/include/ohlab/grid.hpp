#pragma once

#include <utility>
#include <vector>

#include "ohlab/errors.hpp"

namespace ohlab {

/// Uniform periodic 1-D mesh on a torus of circumference `length`.
/// Nodes sit at x_j = j*dx, j = 0..n-1.
struct Grid {
    int n = 0;
    double length = 0.0;
    double dx = 0.0;

    double node(int j) const { return j * dx; }
    bool operator==(const Grid&) const = default;
};

inline Grid make_grid(int n, double length) {
    if (n < 8 || n % 2 != 0)
        throw InvalidGrid("grid size must be even and >= 8, got " + std::to_string(n));
    if (!(length > 0.0))
        throw InvalidGrid("grid length must be positive, got " + std::to_string(length));
    return Grid{n, length, length / n};
}

/// Real sample vector on a Grid. Value semantics throughout.
struct Field {
    Grid grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid& g) : grid(g), values(static_cast<size_t>(g.n), 0.0) {}
    Field(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != g.n)
            throw InvalidGrid("field length does not match grid size");
    }

    int size() const { return grid.n; }
    double& operator[](int j) { return values[static_cast<size_t>(j)]; }
    double operator[](int j) const { return values[static_cast<size_t>(j)]; }
};

template <class F>
Field sample(const Grid& g, F&& f) {
    Field out(g);
    for (int j = 0; j < g.n; ++j) out[j] = f(g.node(j));
    return out;
}

}  // namespace ohlab
