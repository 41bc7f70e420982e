#pragma once

// Test-only oracles, kept independent of the transform-based implementation
// paths they check: direct O(n^2) double-sum quadrature for kernel bilinear
// forms, and a deterministic RNG helper.

#include <random>
#include <vector>

#include "symground/grid.hpp"
#include "symground/kernel.hpp"

namespace oracle {

// Difference-lattice index for the node pair (i, j) along each axis.
inline int lag_index(const symg::Domain& dom, const symg::Domain& diff, int i, int j) {
    auto [i0, i1] = dom.unflatten(i);
    auto [j0, j1] = dom.unflatten(j);
    int l0, l1 = 0;
    if (dom.axis(0).periodic) {
        const int n = dom.axis(0).nodes;
        l0 = ((i0 - j0) % n + n) % n;
    } else {
        l0 = (i0 - j0) + (dom.axis(0).nodes - 1);
    }
    if (dom.dim() == 2) {
        if (dom.axis(1).periodic) {
            const int n = dom.axis(1).nodes;
            l1 = ((i1 - j1) % n + n) % n;
        } else {
            l1 = (i1 - j1) + (dom.axis(1).nodes - 1);
        }
    }
    return diff.flatten(l0, l1);
}

// sum_ij w^2 f_i h(x_i - x_j) g_j by brute force.
inline double bilinear_direct(const symg::Kernel& k, const symg::RealGridFunction& f,
                              const symg::RealGridFunction& g) {
    const symg::Domain& dom = f.domain();
    const symg::Domain& diff = k.difference_domain();
    const double w = dom.cell_measure();
    double acc = 0.0;
    for (int i = 0; i < dom.node_count(); ++i) {
        double row = 0.0;
        for (int j = 0; j < dom.node_count(); ++j)
            row += k.samples()[lag_index(dom, diff, i, j)] * g[j];
        acc += f[i] * row;
    }
    return acc * w * w;
}

// (h * (w g))(x_i) by brute force.
inline symg::RealGridFunction convolve_direct(const symg::Kernel& k,
                                              const symg::RealGridFunction& g) {
    const symg::Domain& dom = g.domain();
    const symg::Domain& diff = k.difference_domain();
    const double w = dom.cell_measure();
    std::vector<double> out(static_cast<std::size_t>(dom.node_count()), 0.0);
    for (int i = 0; i < dom.node_count(); ++i) {
        double row = 0.0;
        for (int j = 0; j < dom.node_count(); ++j)
            row += k.samples()[lag_index(dom, diff, i, j)] * g[j];
        out[static_cast<std::size_t>(i)] = w * row;
    }
    return symg::RealGridFunction(dom, std::move(out));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo = -1.0, double hi = 1.0) {
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    symg::RealGridFunction random_values(const symg::Domain& dom, double lo = -1.0,
                                         double hi = 1.0) {
        std::vector<double> v(static_cast<std::size_t>(dom.node_count()));
        for (auto& x : v) x = uniform(lo, hi);
        return symg::RealGridFunction(dom, std::move(v));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace oracle
