#pragma once

// Discretized measurable spaces: bounded intervals, rectangles and the
// cylinder R x S^1, truncated to a box with a uniform cell-centered tensor
// grid. Nodes sit at cell midpoints, x_i = -L + (i + 1/2) h, so every cell
// carries the same quadrature weight, the node set is symmetric about the
// origin, and odd node counts place a node exactly at 0. The angular axis of
// the cylinder is periodic with period 2*pi.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symg {

enum class DomainKind { line1d, plane2d, cylinder };

inline const char* to_string(DomainKind k) {
    switch (k) {
        case DomainKind::line1d: return "line1d";
        case DomainKind::plane2d: return "plane2d";
        case DomainKind::cylinder: return "cylinder";
    }
    return "?";
}

struct AxisSpec {
    double half_width = 1.0;  // periodic axis: half the period (pi)
    int nodes = 0;
    bool periodic = false;
    double offset = 0.5;  // node position within its cell, in units of the step

    double step() const { return 2.0 * half_width / nodes; }
    double coord(int i) const {
        return periodic ? (i + offset) * step() : -half_width + (i + offset) * step();
    }
    bool operator==(const AxisSpec&) const = default;
};

class Domain {
public:
    static Domain line1d(double L, int n, bool dirichlet = true) {
        return Domain(DomainKind::line1d, {AxisSpec{L, n, false, 0.5}}, dirichlet);
    }
    static Domain plane2d(double Lx, double Ly, int nx, int ny, bool dirichlet = true) {
        return Domain(DomainKind::plane2d,
                      {AxisSpec{Lx, nx, false, 0.5}, AxisSpec{Ly, ny, false, 0.5}}, dirichlet);
    }
    /// Axial extent [-L, L], angular coordinate in [0, 2*pi).
    static Domain cylinder(double L, int n_axial, int n_angular, bool dirichlet = true) {
        return Domain(DomainKind::cylinder,
                      {AxisSpec{L, n_axial, false, 0.5},
                       AxisSpec{std::numbers::pi, n_angular, true, 0.5}},
                      dirichlet);
    }

    DomainKind kind() const { return kind_; }
    int dim() const { return static_cast<int>(axes_.size()); }
    const std::vector<AxisSpec>& axes() const { return axes_; }
    const AxisSpec& axis(int a) const { return axes_[a]; }
    bool dirichlet() const { return dirichlet_; }

    int node_count() const {
        int n = 1;
        for (const auto& ax : axes_) n *= ax.nodes;
        return n;
    }
    double step(int a) const { return axes_[a].step(); }
    /// Product of per-axis steps; the quadrature weight of every node.
    double cell_measure() const {
        double w = 1.0;
        for (const auto& ax : axes_) w *= ax.step();
        return w;
    }
    /// Exact measure of the truncated box/cylinder.
    double total_measure() const { return cell_measure() * node_count(); }

    // Row-major flattening, axis 0 slowest.
    int flatten(int i, int j = 0) const {
        return dim() == 1 ? i : i * axes_[1].nodes + j;
    }
    std::array<int, 2> unflatten(int idx) const {
        if (dim() == 1) return {idx, 0};
        const int ny = axes_[1].nodes;
        return {idx / ny, idx % ny};
    }
    std::array<double, 2> coords(int idx) const {
        auto [i, j] = unflatten(idx);
        if (dim() == 1) return {axes_[0].coord(i), 0.0};
        return {axes_[0].coord(i), axes_[1].coord(j)};
    }
    /// Squared Euclidean distance from the origin (flat metric; the angular
    /// coordinate enters as arc length, only meaningful on non-cylinder kinds).
    double radius2(int idx) const {
        auto c = coords(idx);
        double r2 = 0.0;
        for (int a = 0; a < dim(); ++a) r2 += c[a] * c[a];
        return r2;
    }
    /// True on the outer layer of any non-periodic axis.
    bool boundary_node(int idx) const {
        auto [i, j] = unflatten(idx);
        if (!axes_[0].periodic && (i == 0 || i == axes_[0].nodes - 1)) return true;
        if (dim() == 2 && !axes_[1].periodic && (j == 0 || j == axes_[1].nodes - 1)) return true;
        return false;
    }

    bool operator==(const Domain&) const = default;

    /// Used by kernels and the triple-convolution machinery: the lattice of
    /// pairwise node differences. Non-periodic axes grow to 2n-1 nodes spanning
    /// [-(n-1)h, (n-1)h]; the periodic axis keeps its n lags, re-anchored so
    /// that lag 0 is a node.
    Domain difference_domain() const {
        std::vector<AxisSpec> daxes;
        for (const auto& ax : axes_) {
            if (ax.periodic) {
                daxes.push_back(AxisSpec{ax.half_width, ax.nodes, true, 0.0});
            } else {
                const int n2 = 2 * ax.nodes - 1;
                daxes.push_back(AxisSpec{0.5 * n2 * ax.step(), n2, false, 0.5});
            }
        }
        return Domain(kind_, std::move(daxes), false);
    }

private:
    Domain(DomainKind kind, std::vector<AxisSpec> axes, bool dirichlet)
        : kind_(kind), axes_(std::move(axes)), dirichlet_(dirichlet) {
        for (const auto& ax : axes_) {
            if (!(ax.half_width > 0.0)) throw std::invalid_argument("domain: extent must be > 0");
            if (ax.nodes < 8) throw std::invalid_argument("domain: need at least 8 nodes per axis");
        }
    }

    DomainKind kind_;
    std::vector<AxisSpec> axes_;
    bool dirichlet_;
};

namespace detail {
template <class T>
inline bool finite_value(const T& v) {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    } else {
        return std::isfinite(v);
    }
}
}  // namespace detail

/// A sampled function on a Domain: one value per node, uniform quadrature
/// weight Domain::cell_measure(). Value semantics throughout.
template <class T = double>
class GridFunction {
public:
    GridFunction(Domain dom, std::vector<T> values)
        : dom_(std::move(dom)), v_(std::move(values)) {
        if (static_cast<int>(v_.size()) != dom_.node_count())
            throw std::invalid_argument("grid function: value count does not match node count");
        for (const T& x : v_)
            if (!detail::finite_value(x))
                throw std::invalid_argument("grid function: non-finite value");
    }
    explicit GridFunction(Domain dom, T fill = T{})
        : dom_(std::move(dom)), v_(static_cast<std::size_t>(dom_.node_count()), fill) {}

    static GridFunction sample(const Domain& dom, const std::function<T(double, double)>& f) {
        std::vector<T> v(static_cast<std::size_t>(dom.node_count()));
        for (int i = 0; i < dom.node_count(); ++i) {
            auto c = dom.coords(i);
            v[static_cast<std::size_t>(i)] = f(c[0], c[1]);
        }
        return GridFunction(dom, std::move(v));
    }

    const Domain& domain() const { return dom_; }
    int size() const { return static_cast<int>(v_.size()); }
    const std::vector<T>& values() const { return v_; }
    std::vector<T>& values() { return v_; }
    T operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    T& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }

    /// Zero the outer layer on non-periodic axes (Dirichlet truncation).
    GridFunction& clamp_boundary() {
        for (int i = 0; i < size(); ++i)
            if (dom_.boundary_node(i)) v_[static_cast<std::size_t>(i)] = T{};
        return *this;
    }

    GridFunction& operator+=(const GridFunction& o) {
        require_same_domain(o);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o) {
        require_same_domain(o);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
        return *this;
    }
    GridFunction& operator*=(T s) {
        for (auto& x : v_) x *= s;
        return *this;
    }
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(T s, GridFunction a) { return a *= s; }

    void require_same_domain(const GridFunction& o) const {
        if (!(dom_ == o.dom_)) throw std::invalid_argument("grid functions live on different domains");
    }

private:
    Domain dom_;
    std::vector<T> v_;
};

using RealGridFunction = GridFunction<double>;
using ComplexGridFunction = GridFunction<std::complex<double>>;

template <class T>
inline GridFunction<double> abs(const GridFunction<T>& f) {
    std::vector<double> v(f.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(f.values()[i]);
    return GridFunction<double>(f.domain(), std::move(v));
}

inline ComplexGridFunction to_complex(const RealGridFunction& f) {
    std::vector<std::complex<double>> v(f.values().begin(), f.values().end());
    return ComplexGridFunction(f.domain(), std::move(v));
}

/// Pointwise product a .* b.
template <class T>
inline GridFunction<T> hadamard(const GridFunction<T>& a, const GridFunction<T>& b) {
    a.require_same_domain(b);
    std::vector<T> v(a.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] * b.values()[i];
    return GridFunction<T>(a.domain(), std::move(v));
}

/// integral_X f dx by the midpoint rule (exact for cellwise-linear f).
template <class T>
inline T integrate(const GridFunction<T>& f) {
    T s{};
    for (const T& x : f.values()) s += x;
    return s * static_cast<T>(f.domain().cell_measure());
}

/// (integral |f|^p)^(1/p), p >= 1.
template <class T>
inline double lp_norm(const GridFunction<T>& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    double s = 0.0;
    if (p == 2.0) {
        for (const T& x : f.values()) s += std::norm(std::complex<double>(x));
    } else if (p == 1.0) {
        for (const T& x : f.values()) s += std::abs(x);
    } else {
        for (const T& x : f.values()) s += std::pow(std::abs(x), p);
    }
    s *= f.domain().cell_measure();
    return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

/// integral conj(f) g dx.
template <class T>
inline T inner_product(const GridFunction<T>& f, const GridFunction<T>& g) {
    f.require_same_domain(g);
    T s{};
    if constexpr (std::is_same_v<T, std::complex<double>>) {
        for (std::size_t i = 0; i < f.values().size(); ++i)
            s += std::conj(f.values()[i]) * g.values()[i];
    } else {
        for (std::size_t i = 0; i < f.values().size(); ++i) s += f.values()[i] * g.values()[i];
    }
    return s * static_cast<T>(f.domain().cell_measure());
}

template <class T>
inline double max_abs(const GridFunction<T>& f) {
    double m = 0.0;
    for (const T& x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

namespace detail {

// One axis of the discrete gradient: central differences in the interior,
// one-sided at non-periodic walls, periodic wrap otherwise.
template <class T>
inline void diff_axis(const Domain& dom, const std::vector<T>& u, int axis, std::vector<T>& out) {
    const int n0 = dom.axis(0).nodes;
    const int n1 = dom.dim() == 2 ? dom.axis(1).nodes : 1;
    const int na = axis == 0 ? n0 : n1;
    if (na < 3) throw std::invalid_argument("gradient: need at least 3 nodes per axis");
    const double h = dom.step(axis);
    const double inv2h = 1.0 / (2.0 * h);
    const double invh = 1.0 / h;
    const bool periodic = dom.axis(axis).periodic;
    auto at = [&](int i, int j) -> const T& { return u[static_cast<std::size_t>(i * n1 + j)]; };
    auto put = [&](int i, int j, T v) { out[static_cast<std::size_t>(i * n1 + j)] = v; };

    for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
            const int k = axis == 0 ? i : j;
            T d;
            if (periodic) {
                const int kp = (k + 1) % na, km = (k - 1 + na) % na;
                d = (axis == 0 ? at(kp, j) - at(km, j) : at(i, kp) - at(i, km)) * static_cast<T>(inv2h);
            } else if (k == 0) {
                d = (axis == 0 ? at(1, j) - at(0, j) : at(i, 1) - at(i, 0)) * static_cast<T>(invh);
            } else if (k == na - 1) {
                d = (axis == 0 ? at(na - 1, j) - at(na - 2, j) : at(i, na - 1) - at(i, na - 2)) *
                    static_cast<T>(invh);
            } else {
                d = (axis == 0 ? at(k + 1, j) - at(k - 1, j) : at(i, k + 1) - at(i, k - 1)) *
                    static_cast<T>(inv2h);
            }
            put(i, j, d);
        }
    }
}

}  // namespace detail

/// Per-axis weak-derivative approximation; one GridFunction per axis.
template <class T>
inline std::vector<GridFunction<T>> gradient(const GridFunction<T>& f) {
    std::vector<GridFunction<T>> g;
    for (int a = 0; a < f.domain().dim(); ++a) {
        std::vector<T> out(f.values().size());
        detail::diff_axis(f.domain(), f.values(), a, out);
        g.emplace_back(f.domain(), std::move(out));
    }
    return g;
}

/// Pointwise |grad f|^2 as a real grid function.
template <class T>
inline RealGridFunction gradient_sq_magnitude(const GridFunction<T>& f) {
    auto g = gradient(f);
    std::vector<double> v(f.values().size(), 0.0);
    for (const auto& comp : g)
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += std::norm(std::complex<double>(comp.values()[i]));
    return RealGridFunction(f.domain(), std::move(v));
}

}  // namespace symg
