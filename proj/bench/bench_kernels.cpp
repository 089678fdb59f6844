// Times the serial flavor of each data-parallel kernel against the OpenMP
// flavor and cross-checks that their outputs are bit-identical.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <vector>

#include "pwmlab/kernels.hpp"

namespace {

using pwmlab::Exec;

template <class F>
double best_ms(int repeats, F&& body) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, std::size_t n, double serial_ms, double parallel_ms,
            double max_delta) {
    std::printf("%-14s n=%-8zu serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx  max|delta| %g\n",
                name, n, serial_ms, parallel_ms, serial_ms / parallel_ms, max_delta);
}

} // namespace

int main() {
    using namespace pwmlab::kernels;
    const std::size_t n = std::size_t{1} << 18;
    const int repeats = 5;

    {
        std::vector<double> a(n), b(n);
        auto law = [](std::size_t i) {
            const double t = double(i) * 1e-5;
            return std::sin(400.0 * t) * std::cos(3.0 * t) + 0.1 * t;
        };
        const double s = best_ms(repeats, [&] { fill_indexed(a.data(), n, law, Exec::serial); });
        const double p = best_ms(repeats, [&] { fill_indexed(b.data(), n, law, Exec::parallel); });
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(a[i] - b[i]));
        report("fill_indexed", n, s, p, delta);
    }

    {
        std::vector<double> x(n), y(n);
        fill_indexed(x.data(), n, [](std::size_t i) { return std::sin(0.001 * double(i)); },
                     Exec::serial);
        fill_indexed(y.data(), n, [](std::size_t i) { return std::cos(0.0017 * double(i)); },
                     Exec::serial);
        std::vector<std::uint8_t> ga(n), gb(n);
        const double s =
            best_ms(repeats, [&] { compare_ge(x.data(), y.data(), ga.data(), n, Exec::serial); });
        const double p =
            best_ms(repeats, [&] { compare_ge(x.data(), y.data(), gb.data(), n, Exec::parallel); });
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            delta = std::max(delta, std::abs(double(ga[i]) - double(gb[i])));
        report("compare_ge", n, s, p, delta);
    }

    {
        std::vector<double> x(n);
        fill_indexed(x.data(), n,
                     [n](std::size_t i) {
                         const double u = double(i) / double(n);
                         const double pi = std::numbers::pi;
                         return std::sin(2.0 * pi * u) + 0.2 * std::sin(30.0 * pi * u);
                     },
                     Exec::serial);
        std::vector<std::size_t> orders(64);
        for (std::size_t k = 0; k < orders.size(); ++k) orders[k] = k;
        std::vector<std::complex<double>> oa(orders.size()), ob(orders.size());
        const double s = best_ms(repeats, [&] {
            goertzel_bank(x.data(), n, orders.data(), orders.size(), oa.data(), Exec::serial);
        });
        const double p = best_ms(repeats, [&] {
            goertzel_bank(x.data(), n, orders.data(), orders.size(), ob.data(), Exec::parallel);
        });
        double delta = 0.0;
        for (std::size_t k = 0; k < orders.size(); ++k)
            delta = std::max(delta, std::abs(oa[k] - ob[k]));
        report("goertzel_bank", n, s, p, delta);
    }
    return 0;
}
