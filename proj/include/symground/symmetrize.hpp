#pragma once

// Symmetrization operators: the (G,p)-orbital mean
//     M_p(u)(x) = ( sum_g w_g |u(g.x)|^p )^(1/p),
// the signed orbital average U(x) = sum_g w_g u(g.x), and the symmetric
// decreasing rearrangement u* (discrete layer cake: sort values of |u|
// descending, assign to nodes by distance from the origin ascending). On the
// uniform cell-centered grids used here the rearrangement is exactly
// measure-preserving.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "symground/grid.hpp"
#include "symground/group.hpp"

namespace symg {

inline constexpr double kNormGuard = 1e-300;

struct MeanSpec {
    double p = 2.0;
    const GroupQuadrature* group = nullptr;
};

/// The (G,p)-orbital mean: the weighted power mean of |u|^p over the group.
/// The group maps are applied to the p-th power density |u|^p, not to u; for
/// exact (permutation) elements the two agree identically, and for
/// interpolated elements acting on the density keeps the pointwise power-mean
/// inequalities exact (Jensen over the nonnegative stencil weights) and the
/// p-norm drift at the level of one interpolated quadrature instead of a
/// one-sided value bias. Nonnegative, G-invariant, p-norm preserving.
template <class T>
inline RealGridFunction orbital_mean(const GridFunction<T>& u, double p,
                                     const GroupQuadrature& G) {
    if (!(p >= 1.0)) throw std::invalid_argument("orbital_mean: p must be >= 1");
    const std::size_t n = u.values().size();
    std::vector<double> dens(n);
    if (p == 2.0) {
        for (std::size_t i = 0; i < n; ++i)
            dens[i] = std::norm(std::complex<double>(u[static_cast<int>(i)]));
    } else if (p == 1.0) {
        for (std::size_t i = 0; i < n; ++i) dens[i] = std::abs(u[static_cast<int>(i)]);
    } else {
        for (std::size_t i = 0; i < n; ++i) dens[i] = std::pow(std::abs(u[static_cast<int>(i)]), p);
    }
    const RealGridFunction density(u.domain(), std::move(dens));
    std::vector<double> acc(n, 0.0);
    for (int g = 0; g < G.order(); ++g) {
        RealGridFunction dg = act(G.element(g), density);
        const double w = G.weight(g);
        for (std::size_t i = 0; i < n; ++i) acc[i] += w * dg[static_cast<int>(i)];
    }
    if (p == 2.0) {
        for (auto& a : acc) a = std::sqrt(std::max(a, 0.0));
    } else if (p != 1.0) {
        const double invp = 1.0 / p;
        for (auto& a : acc) a = std::pow(std::max(a, 0.0), invp);
    }
    return RealGridFunction(u.domain(), std::move(acc));
}

template <class T>
inline RealGridFunction orbital_mean(const GridFunction<T>& u, const MeanSpec& spec) {
    if (!spec.group) throw std::invalid_argument("orbital_mean: spec has no group");
    return orbital_mean(u, spec.p, *spec.group);
}

/// U = sum_g w_g (u o g); M_1 without the absolute value. Linear, G-invariant,
/// integral-preserving.
template <class T>
inline GridFunction<T> signed_orbital_average(const GridFunction<T>& u, const GroupQuadrature& G) {
    return group_average(G, u);
}

namespace detail {

// Node visit order for the rearrangement: distance from origin ascending,
// ties by flat index.
inline const std::vector<int>& sdr_node_order(const Domain& dom) {
    thread_local std::vector<std::pair<Domain, std::vector<int>>> cache;
    for (const auto& [d, ord] : cache)
        if (d == dom) return ord;
    std::vector<int> order(static_cast<std::size_t>(dom.node_count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ra = dom.radius2(a), rb = dom.radius2(b);
        if (ra != rb) return ra < rb;
        return a < b;
    });
    cache.emplace_back(dom, std::move(order));
    return cache.back().second;
}

}  // namespace detail

/// Symmetric decreasing rearrangement of |u|. Defined on line1d and plane2d;
/// the cylinder has no centered ball to rearrange onto and is rejected.
template <class T>
inline RealGridFunction sdr(const GridFunction<T>& u) {
    const Domain& dom = u.domain();
    if (dom.kind() == DomainKind::cylinder)
        throw std::invalid_argument("sdr: rearrangement target undefined on the cylinder");
    const int n = dom.node_count();
    std::vector<std::pair<double, int>> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = {std::abs(u[i]), i};
    std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    const std::vector<int>& order = detail::sdr_node_order(dom);
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k)
        out[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] =
            vals[static_cast<std::size_t>(k)].first;
    return RealGridFunction(dom, std::move(out));
}

/// || |u| - M_2(u) ||_2 / max(||u||_2, guard); zero exactly when |u| is
/// G-invariant.
template <class T>
inline double symmetry_deviation(const GridFunction<T>& u, const GroupQuadrature& G) {
    RealGridFunction m = orbital_mean(u, 2.0, G);
    RealGridFunction a = abs(u);
    a -= m;
    return lp_norm(a, 2.0) / std::max(lp_norm(u, 2.0), kNormGuard);
}

}  // namespace symg
