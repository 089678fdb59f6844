#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "helpers.hpp"
#include "pwmlab/kernels.hpp"

using namespace pwmlab;
using testutil::kPi;

TEST_SUITE("kernels") {

TEST_CASE("serial and parallel fills are bit-identical") {
    const std::size_t n = 100000;
    std::vector<double> a(n), b(n);
    const auto law = [](std::size_t i) {
        const double t = static_cast<double>(i) * 1e-4;
        return std::sin(400.0 * t) * std::cos(3.0 * t) + 0.1 * t;
    };
    kernels::fill_indexed(a.data(), n, law, Exec::serial);
    kernels::fill_indexed(b.data(), n, law, Exec::parallel);
    CHECK(a == b);
}

TEST_CASE("comparator semantics and flavor agreement") {
    const std::vector<double> a = {1.0, -2.0, 3.0, 3.0, 0.0, -0.0};
    const std::vector<double> b = {0.5, -1.0, 3.0, 4.0, -0.0, 0.0};
    std::vector<std::uint8_t> s(a.size()), p(a.size());
    kernels::compare_ge(a.data(), b.data(), s.data(), a.size(), Exec::serial);
    kernels::compare_ge(a.data(), b.data(), p.data(), a.size(), Exec::parallel);
    CHECK(s == std::vector<std::uint8_t>{1, 0, 1, 0, 1, 1}); // ties on, -0 == 0
    CHECK(s == p);

    const std::size_t n = 65536;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::sin(0.001 * static_cast<double>(i));
        y[i] = std::cos(0.0007 * static_cast<double>(i));
    }
    std::vector<std::uint8_t> xs(n), xp(n);
    kernels::compare_ge(x.data(), y.data(), xs.data(), n, Exec::serial);
    kernels::compare_ge(x.data(), y.data(), xp.data(), n, Exec::parallel);
    CHECK(xs == xp);
}

TEST_CASE("single-bin transform against a direct summation") {
    const std::size_t n = 512;
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(n);
        x[j] = 0.7 * std::sin(2.0 * kPi * 5.0 * u + 0.3) + 0.2 * std::cos(2.0 * kPi * 17.0 * u) + 0.05;
    }
    const std::vector<std::size_t> orders = {0, 1, 5, 17, 100};
    std::vector<std::complex<double>> got(orders.size());
    kernels::goertzel_bank(x.data(), n, orders.data(), orders.size(), got.data(),
                           Exec::serial);

    for (std::size_t i = 0; i < orders.size(); ++i) {
        std::complex<double> want = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * kPi * static_cast<double>(orders[i]) *
                               static_cast<double>(j) / static_cast<double>(n);
            want += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        CHECK(std::abs(got[i] - want) < 1e-9 * static_cast<double>(n));
    }

    std::vector<std::complex<double>> par(orders.size());
    kernels::goertzel_bank(x.data(), n, orders.data(), orders.size(), par.data(),
                           Exec::parallel);
    for (std::size_t i = 0; i < orders.size(); ++i) {
        CHECK(got[i].real() == par[i].real());
        CHECK(got[i].imag() == par[i].imag());
    }
}

TEST_CASE("default flavor is a process-wide switch") {
    const Exec before = default_exec();
    set_default_exec(Exec::serial);
    CHECK(default_exec() == Exec::serial);
    set_default_exec(Exec::parallel);
    CHECK(default_exec() == Exec::parallel);
    set_default_exec(before);
}

} // TEST_SUITE
