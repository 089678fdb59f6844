#pragma once

// Data-parallel inner loops, each in a serial and an OpenMP flavor. The two
// flavors perform identical per-element arithmetic, so their outputs are
// bit-identical; the serial ones are kept as the reference the tests and the
// benchmark compare against. Nothing here reduces across elements, which is
// what keeps the parallel output deterministic.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pwmlab {

enum class Exec { serial, parallel };

// Default execution flavor for the library's own calls.
Exec default_exec() noexcept;
void set_default_exec(Exec e) noexcept;

namespace kernels {

// out[i] = f(i) for i in [0, n). f must be pure.
template <class F>
void fill_indexed(double* out, std::size_t n, F&& f, Exec exec) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            out[i] = f(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    }
}

// out[i] = (a[i] >= b[i]), the natural-sampling comparator. Ties count as on.
void compare_ge(const double* a, const double* b, std::uint8_t* out, std::size_t n, Exec exec);

// One DFT bin per requested harmonic order over a single folded period,
// X_k = sum_j x[j] * exp(-2*pi*i*k*j/n). Sequential recurrence per bin,
// parallel across bins.
void goertzel_bank(const double* x, std::size_t n, const std::size_t* orders,
                   std::size_t n_orders, std::complex<double>* out, Exec exec);

} // namespace kernels
} // namespace pwmlab
