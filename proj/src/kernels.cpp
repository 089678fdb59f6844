#include "pwmlab/kernels.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace pwmlab {

namespace {
std::atomic<Exec> g_exec{Exec::parallel};
}

Exec default_exec() noexcept { return g_exec.load(std::memory_order_relaxed); }
void set_default_exec(Exec e) noexcept { g_exec.store(e, std::memory_order_relaxed); }

namespace kernels {

void compare_ge(const double* a, const double* b, std::uint8_t* out, std::size_t n, Exec exec) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            out[i] = a[i] >= b[i] ? 1 : 0;
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = a[i] >= b[i] ? 1 : 0;
    }
}

namespace {

std::complex<double> goertzel_one(const double* x, std::size_t n, std::size_t order) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(order) / static_cast<double>(n);
    const double coeff = 2.0 * std::cos(w);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double s0 = x[j] + coeff * s1 - s2;
        s2 = s1;
        s1 = s0;
    }
    // s1*e^{iw} - s2 = e^{iwn} * sum x[j] e^{-iwj}, and e^{iwn} = 1 on
    // synchronous bins (w*n = 2*pi*order), so this is already the
    // exp(-2*pi*i*k*j/n) convention.
    const double re = s1 * std::cos(w) - s2;
    const double im = s1 * std::sin(w);
    return {re, im};
}

} // namespace

void goertzel_bank(const double* x, std::size_t n, const std::size_t* orders,
                   std::size_t n_orders, std::complex<double>* out, Exec exec) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n_orders); ++i)
            out[i] = goertzel_one(x, n, orders[i]);
    } else {
        for (std::size_t i = 0; i < n_orders; ++i)
            out[i] = goertzel_one(x, n, orders[i]);
    }
}

} // namespace kernels
} // namespace pwmlab
