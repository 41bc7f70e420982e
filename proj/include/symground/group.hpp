#pragma once

// Compact symmetry groups acting on domains, with the invariant probability
// measure realized as a finite quadrature (uniform weights over a cyclic or
// two-element group). Group elements act on grid functions by pullback,
// (u o g)(x) = u(g.x): an exact node permutation whenever g maps the node set
// to itself, otherwise a bilinear interpolation stencil with nonnegative
// weights. Source points outside the truncated domain read as zero.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symground/grid.hpp"

namespace symg {

enum class GroupKind { reflection_z2, rotation_zn, circle_so2, cylinder_shift };

inline const char* to_string(GroupKind k) {
    switch (k) {
        case GroupKind::reflection_z2: return "reflection_z2";
        case GroupKind::rotation_zn: return "rotation_zn";
        case GroupKind::circle_so2: return "circle_so2";
        case GroupKind::cylinder_shift: return "cylinder_shift";
    }
    return "?";
}

struct GroupSpec {
    GroupKind kind = GroupKind::reflection_z2;
    int n = 2;        // rotation_zn order
    int m_quad = 16;  // circle_so2 / cylinder_shift quadrature size
};

/// One group element as a per-node source rule.
class GroupElementMap {
public:
    struct Stencil {
        std::array<int, 4> idx{-1, -1, -1, -1};  // -1: outside the domain, reads 0
        std::array<double, 4> w{0, 0, 0, 0};
        int count = 0;
    };

    static GroupElementMap permutation(Domain dom, std::vector<int> source) {
        GroupElementMap m;
        m.dom_ = std::move(dom);
        m.perm_ = std::move(source);
        m.exact_ = true;
        return m;
    }
    static GroupElementMap interpolation(Domain dom, std::vector<Stencil> stencils) {
        GroupElementMap m;
        m.dom_ = std::move(dom);
        m.stencils_ = std::move(stencils);
        m.exact_ = false;
        return m;
    }

    bool exact() const { return exact_; }
    const Domain& domain() const { return dom_; }

    template <class T>
    GridFunction<T> apply(const GridFunction<T>& u) const {
        if (!(u.domain() == dom_))
            throw std::invalid_argument("group element map built for a different domain");
        std::vector<T> out(u.values().size());
        if (exact_) {
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] = u.values()[static_cast<std::size_t>(perm_[i])];
        } else {
            for (std::size_t i = 0; i < out.size(); ++i) {
                const Stencil& s = stencils_[i];
                T acc{};
                for (int k = 0; k < s.count; ++k)
                    if (s.idx[k] >= 0)
                        acc += static_cast<T>(s.w[k]) * u.values()[static_cast<std::size_t>(s.idx[k])];
                out[i] = acc;
            }
        }
        return GridFunction<T>(u.domain(), std::move(out));
    }

private:
    Domain dom_ = Domain::line1d(1.0, 8, false);
    bool exact_ = true;
    std::vector<int> perm_;
    std::vector<Stencil> stencils_;
};

/// A finite stand-in for (G, dg): element maps with positive weights summing
/// to one. Uniform weights are the invariant probability measure on the
/// cyclic groups used here.
class GroupQuadrature {
public:
    GroupQuadrature(GroupSpec spec, Domain dom, std::vector<GroupElementMap> maps)
        : spec_(spec), dom_(std::move(dom)), maps_(std::move(maps)) {
        if (maps_.empty()) throw std::invalid_argument("group quadrature: no elements");
        weight_ = 1.0 / static_cast<double>(maps_.size());
    }

    const GroupSpec& spec() const { return spec_; }
    const Domain& domain() const { return dom_; }
    int order() const { return static_cast<int>(maps_.size()); }
    const GroupElementMap& element(int g) const { return maps_[static_cast<std::size_t>(g)]; }
    double weight(int) const { return weight_; }
    bool all_exact() const {
        for (const auto& m : maps_)
            if (!m.exact()) return false;
        return true;
    }

private:
    GroupSpec spec_;
    Domain dom_;
    std::vector<GroupElementMap> maps_;
    double weight_;
};

namespace detail {

// Index of the node with coordinate c on this axis, or -1.
inline int node_at(const AxisSpec& ax, double c, double tol) {
    const double h = ax.step();
    double s = ax.periodic ? c / h - ax.offset : (c + ax.half_width) / h - ax.offset;
    if (ax.periodic) {
        s -= std::floor(s / ax.nodes) * ax.nodes;  // wrap into [0, n)
    }
    const double r = std::round(s);
    if (std::abs(s - r) > tol) return -1;
    int i = static_cast<int>(r);
    if (ax.periodic) {
        if (i == ax.nodes) i = 0;
        return i;
    }
    return (i >= 0 && i < ax.nodes) ? i : -1;
}

// Builds the pullback map for the linear action x -> R x with rotation matrix
// R = [[c, -s], [s, c]] (target node x reads the value at R x).
inline GroupElementMap rotation_map(const Domain& dom, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    const int n = dom.node_count();
    const double tol = 1e-9;
    // Quarter-turn multiples permute the cell-centered square grid exactly.
    const bool axis_aligned = std::abs(c * s) < 1e-14 && std::abs(c + s) > 0.5;
    if (axis_aligned) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) {
            auto p = dom.coords(t);
            const double sx = c * p[0] - s * p[1];
            const double sy = s * p[0] + c * p[1];
            const int i = node_at(dom.axis(0), sx, tol);
            const int j = node_at(dom.axis(1), sy, tol);
            if (i < 0 || j < 0)
                throw std::logic_error("rotation expected to be exact does not map nodes to nodes");
            perm[static_cast<std::size_t>(t)] = dom.flatten(i, j);
        }
        return GroupElementMap::permutation(dom, std::move(perm));
    }
    std::vector<GroupElementMap::Stencil> st(static_cast<std::size_t>(n));
    const AxisSpec& ax = dom.axis(0);
    const AxisSpec& ay = dom.axis(1);
    for (int t = 0; t < n; ++t) {
        auto p = dom.coords(t);
        const double sx = c * p[0] - s * p[1];
        const double sy = s * p[0] + c * p[1];
        const double fx = (sx + ax.half_width) / ax.step() - ax.offset;
        const double fy = (sy + ay.half_width) / ay.step() - ay.offset;
        const int i0 = static_cast<int>(std::floor(fx));
        const int j0 = static_cast<int>(std::floor(fy));
        const double tx = fx - i0, ty = fy - j0;
        GroupElementMap::Stencil& out = st[static_cast<std::size_t>(t)];
        const double ww[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};
        const int ii[4] = {i0, i0 + 1, i0, i0 + 1};
        const int jj[4] = {j0, j0, j0 + 1, j0 + 1};
        for (int k = 0; k < 4; ++k) {
            out.w[static_cast<std::size_t>(out.count)] = ww[k];
            out.idx[static_cast<std::size_t>(out.count)] =
                (ii[k] >= 0 && ii[k] < ax.nodes && jj[k] >= 0 && jj[k] < ay.nodes)
                    ? dom.flatten(ii[k], jj[k])
                    : -1;
            ++out.count;
        }
    }
    return GroupElementMap::interpolation(dom, std::move(st));
}

// Angular shift theta -> theta + tau on the cylinder (pullback reads at
// theta + tau). Exact when tau is a whole number of angular steps.
inline GroupElementMap shift_map(const Domain& dom, double tau) {
    const AxisSpec& ath = dom.axis(1);
    const int n0 = dom.axis(0).nodes, n1 = ath.nodes;
    const double steps = tau / ath.step();
    const double r = std::round(steps);
    if (std::abs(steps - r) < 1e-9) {
        const int shift = ((static_cast<int>(r) % n1) + n1) % n1;
        std::vector<int> perm(static_cast<std::size_t>(n0 * n1));
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j)
                perm[static_cast<std::size_t>(dom.flatten(i, j))] = dom.flatten(i, (j + shift) % n1);
        return GroupElementMap::permutation(dom, std::move(perm));
    }
    std::vector<GroupElementMap::Stencil> st(static_cast<std::size_t>(n0 * n1));
    const int j0 = static_cast<int>(std::floor(steps));
    const double t = steps - j0;
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j) {
            GroupElementMap::Stencil& out = st[static_cast<std::size_t>(dom.flatten(i, j))];
            out.count = 2;
            out.idx[0] = dom.flatten(i, (((j + j0) % n1) + n1) % n1);
            out.idx[1] = dom.flatten(i, (((j + j0 + 1) % n1) + n1) % n1);
            out.w[0] = 1 - t;
            out.w[1] = t;
        }
    return GroupElementMap::interpolation(dom, std::move(st));
}

inline std::vector<int> reflection_perm(const Domain& dom) {
    const int n = dom.axis(0).nodes;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = n - 1 - i;
    return perm;
}

}  // namespace detail

/// Builds the quadrature for a group acting on a domain. Rejects pairings the
/// action is not defined for (e.g. planar rotations of a cylinder).
inline GroupQuadrature build_group(const GroupSpec& spec, const Domain& dom) {
    using std::numbers::pi;
    std::vector<GroupElementMap> maps;
    switch (spec.kind) {
        case GroupKind::reflection_z2: {
            if (dom.kind() != DomainKind::line1d)
                throw std::invalid_argument("reflection_z2 acts on line1d");
            maps.push_back(GroupElementMap::permutation(dom, [&] {
                std::vector<int> id(static_cast<std::size_t>(dom.node_count()));
                for (int i = 0; i < dom.node_count(); ++i) id[static_cast<std::size_t>(i)] = i;
                return id;
            }()));
            maps.push_back(GroupElementMap::permutation(dom, detail::reflection_perm(dom)));
            break;
        }
        case GroupKind::rotation_zn:
        case GroupKind::circle_so2: {
            if (dom.kind() != DomainKind::plane2d)
                throw std::invalid_argument("rotation groups act on plane2d");
            if (!(dom.axis(0) == dom.axis(1)))
                throw std::invalid_argument("rotation groups need a square grid (equal axes)");
            const int m = spec.kind == GroupKind::rotation_zn ? spec.n : spec.m_quad;
            if (spec.kind == GroupKind::rotation_zn && m < 2)
                throw std::invalid_argument("rotation_zn: order must be >= 2");
            if (spec.kind == GroupKind::circle_so2 && m < 8)
                throw std::invalid_argument("circle_so2: quadrature size must be >= 8");
            for (int r = 0; r < m; ++r)
                maps.push_back(detail::rotation_map(dom, 2.0 * pi * r / m));
            break;
        }
        case GroupKind::cylinder_shift: {
            if (dom.kind() != DomainKind::cylinder)
                throw std::invalid_argument("cylinder_shift acts on cylinder");
            if (spec.m_quad < 8)
                throw std::invalid_argument("cylinder_shift: quadrature size must be >= 8");
            for (int r = 0; r < spec.m_quad; ++r)
                maps.push_back(detail::shift_map(dom, 2.0 * pi * r / spec.m_quad));
            break;
        }
    }
    return GroupQuadrature(spec, dom, std::move(maps));
}

/// The same group acting on the lattice of node differences: linear kinds act
/// by the same rotation/reflection, shifts act trivially on differences.
inline GroupQuadrature difference_group(const GroupQuadrature& G) {
    const Domain diff = G.domain().difference_domain();
    using std::numbers::pi;
    const GroupSpec& spec = G.spec();
    std::vector<GroupElementMap> maps;
    switch (spec.kind) {
        case GroupKind::reflection_z2: {
            maps.push_back(GroupElementMap::permutation(diff, [&] {
                std::vector<int> id(static_cast<std::size_t>(diff.node_count()));
                for (int i = 0; i < diff.node_count(); ++i) id[static_cast<std::size_t>(i)] = i;
                return id;
            }()));
            maps.push_back(GroupElementMap::permutation(diff, detail::reflection_perm(diff)));
            break;
        }
        case GroupKind::rotation_zn:
        case GroupKind::circle_so2: {
            const int m = spec.kind == GroupKind::rotation_zn ? spec.n : spec.m_quad;
            for (int r = 0; r < m; ++r)
                maps.push_back(detail::rotation_map(diff, 2.0 * pi * r / m));
            break;
        }
        case GroupKind::cylinder_shift: {
            std::vector<int> id(static_cast<std::size_t>(diff.node_count()));
            for (int i = 0; i < diff.node_count(); ++i) id[static_cast<std::size_t>(i)] = i;
            for (int r = 0; r < spec.m_quad; ++r)
                maps.push_back(GroupElementMap::permutation(diff, id));
            break;
        }
    }
    return GroupQuadrature(spec, diff, std::move(maps));
}

/// Pullback u o g.
template <class T>
inline GridFunction<T> act(const GroupElementMap& g, const GridFunction<T>& u) {
    return g.apply(u);
}

/// max over elements of ||u o g - u||_2 / max(||u||_2, guard); second member
/// of the pair is that deviation.
template <class T>
inline std::pair<bool, double> is_invariant(const GridFunction<T>& u, const GroupQuadrature& G,
                                            double tol) {
    constexpr double kGuard = 1e-300;
    const double nu = std::max(lp_norm(u, 2.0), kGuard);
    double dev = 0.0;
    for (int g = 0; g < G.order(); ++g) {
        GridFunction<T> ug = act(G.element(g), u);
        ug -= u;
        dev = std::max(dev, lp_norm(ug, 2.0) / nu);
    }
    return {dev <= tol, dev};
}

/// Signed group average sum_g w_g (u o g); linear in u.
template <class T>
inline GridFunction<T> group_average(const GroupQuadrature& G, const GridFunction<T>& u) {
    GridFunction<T> acc(u.domain());
    for (int g = 0; g < G.order(); ++g) {
        GridFunction<T> ug = act(G.element(g), u);
        ug *= static_cast<T>(G.weight(g));
        acc += ug;
    }
    return acc;
}

}  // namespace symg
