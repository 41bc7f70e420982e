#pragma once

// Two-point interaction kernels h(x - y) sampled on the lattice of node
// differences, with a positive-definiteness certificate from the discrete
// Fourier transform of the circulant embedding. If every spectrum component
// is nonnegative then the quadratic form sum_ij f_i h(x_i - x_j) f_j is
// nonnegative for every grid function f (the Toeplitz form is a principal
// submatrix of the circulant one); exempting the zero-frequency component
// certifies positivity on mean-zero functions, which on these uniform grids
// coincide with the functions of integral zero.
//
// Convolution against a density is linear (zero-padded) along truncated axes
// and circular along the periodic cylinder angle.

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symground/bessel.hpp"
#include "symground/fft.hpp"
#include "symground/grid.hpp"
#include "symground/group.hpp"

namespace symg {

enum class KernelKind { gaussian, box, neg_abs, relativistic_bessel, table };

inline const char* to_string(KernelKind k) {
    switch (k) {
        case KernelKind::gaussian: return "gaussian";
        case KernelKind::box: return "box";
        case KernelKind::neg_abs: return "neg_abs";
        case KernelKind::relativistic_bessel: return "relativistic_bessel";
        case KernelKind::table: return "table";
    }
    return "?";
}

enum class PdMode { all, mean_zero };

struct PdCertificate {
    bool positive = false;
    double min_component = 0.0;  // smallest retained spectrum component
};

namespace detail {

// Euclidean distance between difference-lattice points and 0; the periodic
// angle contributes its wrapped arc length.
inline double lag_distance(const Domain& diff, int idx) {
    auto c = diff.coords(idx);
    double r2 = 0.0;
    for (int a = 0; a < diff.dim(); ++a) {
        double d = c[a];
        if (diff.axis(a).periodic) {
            const double period = 2.0 * diff.axis(a).half_width;
            d = std::remainder(d, period);
        }
        r2 += d * d;
    }
    return std::sqrt(r2);
}

// Index of -z on the difference lattice.
inline int negate_index(const Domain& diff, int idx) {
    auto [i, j] = diff.unflatten(idx);
    const int n0 = diff.axis(0).nodes;
    int i2 = diff.axis(0).periodic ? (n0 - i) % n0 : n0 - 1 - i;
    if (diff.dim() == 1) return i2;
    const int n1 = diff.axis(1).nodes;
    int j2 = diff.axis(1).periodic ? (n1 - j) % n1 : n1 - 1 - j;
    return diff.flatten(i2, j2);
}

}  // namespace detail

class Kernel {
public:
    /// h(z) = exp(-|z|^2 / (2 sigma^2)).
    static Kernel gaussian(const Domain& dom, double sigma) {
        if (!(sigma > 0.0)) throw std::invalid_argument("gaussian kernel: sigma must be > 0");
        return from_profile(dom, KernelKind::gaussian,
                            [sigma](double r) { return std::exp(-r * r / (2.0 * sigma * sigma)); });
    }
    /// h(z) = 1 for |z| <= a.
    static Kernel box(const Domain& dom, double a) {
        if (!(a > 0.0)) throw std::invalid_argument("box kernel: radius must be > 0");
        return from_profile(dom, KernelKind::box, [a](double r) { return r <= a ? 1.0 : 0.0; });
    }
    /// h(z) = -|z|; positive-definite on mean-zero functions in one dimension.
    static Kernel neg_abs(const Domain& dom) {
        if (dom.kind() != DomainKind::line1d)
            throw std::invalid_argument("neg_abs kernel is defined on line1d");
        return from_profile(dom, KernelKind::neg_abs, [](double r) { return -r; });
    }
    /// R_m(z) = (m/2pi)^((d+1)/2) K_{(d+1)/2}(m|z|) / |z|^((d+1)/2), with the
    /// singular diagonal sample set to zero (the |u(x)-u(y)|^2 factor vanishes
    /// there; the omitted cell is handled by the energy module).
    static Kernel relativistic_bessel(const Domain& dom, double m) {
        if (!(m > 0.0)) throw std::invalid_argument("relativistic kernel: m must be > 0");
        if (dom.kind() == DomainKind::cylinder)
            throw std::invalid_argument("relativistic kernel is defined on line1d/plane2d");
        const double d = dom.dim();
        const double nu = 0.5 * (d + 1.0);
        const double pref = std::pow(m / (2.0 * std::numbers::pi), nu);
        return from_profile(dom, KernelKind::relativistic_bessel, [=](double r) {
            if (r == 0.0) return 0.0;
            return pref * bessel_k(nu, m * r) / std::pow(r, nu);
        });
    }
    /// Arbitrary even samples on the difference lattice of dom.
    static Kernel table(const Domain& dom, std::vector<double> samples) {
        Kernel k(dom, KernelKind::table,
                 RealGridFunction(dom.difference_domain(), std::move(samples)));
        k.validate_even();
        return k;
    }

    KernelKind kind() const { return kind_; }
    const Domain& base_domain() const { return base_; }
    const Domain& difference_domain() const { return samples_.domain(); }
    const RealGridFunction& samples() const { return samples_; }
    double max_abs_sample() const { return max_abs(samples_); }

    /// Spectrum certificate; cached after the first call per mode.
    PdCertificate positive_definite(PdMode mode) const {
        std::call_once(cache_->once, [&] { cache_->spectrum = circulant_spectrum(); });
        const std::vector<double>& spec = cache_->spectrum;
        double mn = 1e300, mx = 0.0;
        for (std::size_t m = 0; m < spec.size(); ++m) {
            mx = std::max(mx, std::abs(spec[m]));
            if (mode == PdMode::mean_zero && m == 0) continue;
            mn = std::min(mn, spec[m]);
        }
        return {mn >= -1e-10 * mx, mn};
    }

    /// Deviation of the samples from invariance under the group acting on
    /// differences (shifts act trivially there, so cylinder kernels built from
    /// the wrapped lag are invariant by construction).
    double invariance_deviation(const GroupQuadrature& G) const {
        const GroupQuadrature DG = difference_group(G);
        return is_invariant(samples_, DG, 0.0).second;
    }

    /// (h * (w f))(x_i) = sum_j h(x_i - x_j) w_j f_j on the base domain.
    RealGridFunction convolve(const RealGridFunction& f) const {
        if (!(f.domain() == base_))
            throw std::invalid_argument("kernel built for a different domain");
        const Domain& dom = base_;
        const Domain& diff = samples_.domain();
        const int dim = dom.dim();
        std::vector<int> padded(static_cast<std::size_t>(dim));
        for (int a = 0; a < dim; ++a) {
            const int n = dom.axis(a).nodes;
            if (dom.axis(a).periodic) {
                padded[static_cast<std::size_t>(a)] = n;
            } else {
                int m = 1;
                while (m < 3 * n - 2) m *= 2;
                padded[static_cast<std::size_t>(a)] = m;
            }
        }
        const int M0 = padded[0];
        const int M1 = dim == 2 ? padded[1] : 1;
        const std::size_t total = static_cast<std::size_t>(M0) * M1;

        std::vector<std::complex<double>> ker(total, 0.0);
        const int dn0 = diff.axis(0).nodes;
        const int dn1 = diff.dim() == 2 ? diff.axis(1).nodes : 1;
        auto lag_slot = [](const AxisSpec& base_ax, int l, int M) {
            // diff index l encodes lag l - (n-1) on truncated axes, lag l on
            // the periodic one; map onto the circulant slot in [0, M)
            if (base_ax.periodic) return l;
            const int lag = l - (base_ax.nodes - 1);
            return lag >= 0 ? lag : lag + M;
        };
        for (int l0 = 0; l0 < dn0; ++l0) {
            const int p0 = lag_slot(dom.axis(0), l0, M0);
            for (int l1 = 0; l1 < dn1; ++l1) {
                const int p1 = dim == 2 ? lag_slot(dom.axis(1), l1, M1) : 0;
                ker[static_cast<std::size_t>(p0 * M1 + p1)] =
                    samples_[diff.flatten(l0, l1)];
            }
        }

        std::vector<std::complex<double>> dat(total, 0.0);
        const int n0 = dom.axis(0).nodes;
        const int n1 = dim == 2 ? dom.axis(1).nodes : 1;
        const double w = dom.cell_measure();
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j)
                dat[static_cast<std::size_t>(i * M1 + j)] = w * f[dom.flatten(i, j)];

        fft::forward(ker, padded);
        fft::forward(dat, padded);
        for (std::size_t k = 0; k < total; ++k) dat[k] *= ker[k];
        fft::inverse(dat, padded);

        std::vector<double> out(static_cast<std::size_t>(dom.node_count()));
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j)
                out[static_cast<std::size_t>(dom.flatten(i, j))] =
                    dat[static_cast<std::size_t>(i * M1 + j)].real();
        return RealGridFunction(dom, std::move(out));
    }

private:
    Kernel(Domain base, KernelKind kind, RealGridFunction samples)
        : base_(std::move(base)), kind_(kind), samples_(std::move(samples)),
          cache_(std::make_shared<Cache>()) {}

    template <class Profile>
    static Kernel from_profile(const Domain& dom, KernelKind kind, Profile&& prof) {
        const Domain diff = dom.difference_domain();
        std::vector<double> v(static_cast<std::size_t>(diff.node_count()));
        for (int i = 0; i < diff.node_count(); ++i)
            v[static_cast<std::size_t>(i)] = prof(detail::lag_distance(diff, i));
        Kernel k(dom, kind, RealGridFunction(diff, std::move(v)));
        k.validate_even();
        return k;
    }

    void validate_even() const {
        const Domain& diff = samples_.domain();
        const double scale = std::max(max_abs(samples_), 1e-300);
        for (int i = 0; i < diff.node_count(); ++i)
            if (std::abs(samples_[i] - samples_[detail::negate_index(diff, i)]) > 1e-12 * scale)
                throw std::invalid_argument("kernel samples are not even: h(-z) != h(z)");
    }

    // DFT of the lag-ordered samples (real by evenness).
    std::vector<double> circulant_spectrum() const {
        const Domain& diff = samples_.domain();
        const int dn0 = diff.axis(0).nodes;
        const int dn1 = diff.dim() == 2 ? diff.axis(1).nodes : 1;
        std::vector<int> shape;
        shape.push_back(dn0);
        if (diff.dim() == 2) shape.push_back(dn1);
        std::vector<std::complex<double>> buf(static_cast<std::size_t>(dn0) * dn1);
        auto lag_slot = [&](const AxisSpec& diff_ax, int l, int dn) {
            if (diff_ax.periodic) return l;
            const int half = (dn - 1) / 2;  // dn = 2n-1
            const int lag = l - half;
            return lag >= 0 ? lag : lag + dn;
        };
        for (int l0 = 0; l0 < dn0; ++l0)
            for (int l1 = 0; l1 < dn1; ++l1) {
                const int p0 = lag_slot(diff.axis(0), l0, dn0);
                const int p1 = diff.dim() == 2 ? lag_slot(diff.axis(1), l1, dn1) : 0;
                buf[static_cast<std::size_t>(p0 * dn1 + p1)] = samples_[diff.flatten(l0, l1)];
            }
        fft::forward(buf, shape);
        std::vector<double> spec(buf.size());
        for (std::size_t k = 0; k < buf.size(); ++k) spec[k] = buf[k].real();
        return spec;
    }

    struct Cache {
        std::once_flag once;
        std::vector<double> spectrum;
    };

    Domain base_;
    KernelKind kind_;
    RealGridFunction samples_;
    std::shared_ptr<Cache> cache_;
};

/// (bool, min spectrum component); mode=mean_zero exempts the zero frequency.
inline std::pair<bool, double> positive_definite_check(const Kernel& k, PdMode mode) {
    const PdCertificate c = k.positive_definite(mode);
    return {c.positive, c.min_component};
}

}  // namespace symg
