#pragma once

// Thin cached-plan wrapper over FFTW's complex double transforms.
// Plans are created once per (shape, direction) under a global planner lock
// (FFTW planning is not thread-safe) and kept in a thread-local cache, so
// execution never contends.

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace symg::fft {

using cdouble = std::complex<double>;

namespace detail {

inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanSlot {
    fftw_plan plan = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t len = 0;

    PlanSlot() = default;
    PlanSlot(const PlanSlot&) = delete;
    PlanSlot& operator=(const PlanSlot&) = delete;
    PlanSlot(PlanSlot&& o) noexcept : plan(o.plan), buf(o.buf), len(o.len) {
        o.plan = nullptr;
        o.buf = nullptr;
    }
    ~PlanSlot() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (plan) fftw_destroy_plan(plan);
        if (buf) fftw_free(buf);
    }
};

using PlanKey = std::pair<std::vector<int>, int>;

inline PlanSlot make_slot(const std::vector<int>& shape, int sign) {
    PlanSlot slot;
    slot.len = 1;
    for (int n : shape) slot.len *= static_cast<std::size_t>(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    slot.buf = fftw_alloc_complex(slot.len);
    if (!slot.buf) throw std::bad_alloc();
    slot.plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(),
                              slot.buf, slot.buf, sign, FFTW_ESTIMATE);
    if (!slot.plan) throw std::runtime_error("fftw_plan_dft failed");
    return slot;
}

inline PlanSlot& cached_slot(const std::vector<int>& shape, int sign) {
    thread_local std::map<PlanKey, PlanSlot> cache;
    PlanKey key{shape, sign};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(std::move(key), make_slot(shape, sign)).first;
    return it->second;
}

}  // namespace detail

/// In-place unnormalized DFT over a row-major array of the given shape.
/// sign = FFTW_FORWARD (-1) or FFTW_BACKWARD (+1).
inline void transform(std::span<cdouble> data, std::span<const int> shape, int sign) {
    std::vector<int> sh(shape.begin(), shape.end());
    std::size_t len = 1;
    for (int n : sh) {
        if (n < 1) throw std::invalid_argument("fft: shape entries must be >= 1");
        len *= static_cast<std::size_t>(n);
    }
    if (len != data.size()) throw std::invalid_argument("fft: data size does not match shape");
    detail::PlanSlot& slot = detail::cached_slot(sh, sign);
    std::memcpy(slot.buf, data.data(), len * sizeof(cdouble));
    fftw_execute(slot.plan);
    std::memcpy(data.data(), slot.buf, len * sizeof(cdouble));
}

inline void forward(std::span<cdouble> data, std::span<const int> shape) {
    transform(data, shape, FFTW_FORWARD);
}

/// Backward transform scaled by 1/N, i.e. the inverse of forward().
inline void inverse(std::span<cdouble> data, std::span<const int> shape) {
    transform(data, shape, FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(data.size());
    for (auto& z : data) z *= inv;
}

}  // namespace symg::fft
