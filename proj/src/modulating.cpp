#include "pwmlab/modulating.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pwmlab/error.hpp"
#include "pwmlab/kernels.hpp"

namespace pwmlab {

std::vector<std::pair<int, double>> default_injection() {
    return {{3, 1.0 / 6.0}};
}

void validate(const ModulatingSpec& spec) {
    if (!(spec.fundamental_hz > 0.0))
        fail("modulating", "fundamental must be positive");
    if (!(spec.amplitude_index > 0.0) || spec.amplitude_index > 1.2)
        fail("modulating", "amplitude index must lie in (0, 1.2]");
    for (const auto& [order, amp] : spec.injection) {
        if (order < 3 || order % 2 == 0)
            fail("modulating", "injection orders must be odd and >= 3, got " +
                                   std::to_string(order));
        (void)amp;
    }
}

double modulating_value(const ModulatingSpec& spec, double t) {
    const double w = 2.0 * std::numbers::pi * spec.fundamental_hz;
    const double x = w * t + spec.phase_rad;
    double v = std::sin(x);
    for (const auto& [order, amp] : spec.injection)
        v += amp * std::sin(static_cast<double>(order) * x);
    return spec.amplitude_index * v;
}

SampledWaveform make_modulating(const ModulatingSpec& spec, std::size_t n_periods,
                                double sample_rate_hz) {
    validate(spec);
    if (n_periods == 0) fail("modulating", "need at least one period");
    const auto spp = checked_samples_per_period(sample_rate_hz, spec.fundamental_hz, 0);

    SampledWaveform w;
    w.sample_rate_hz = sample_rate_hz;
    w.fundamental_hz = spec.fundamental_hz;
    w.samples.resize(spp * n_periods);

    // Arguments are built from the exact per-period sample fraction j/spp so
    // every period is sample-identical and half-wave symmetry is exact.
    const double two_pi = 2.0 * std::numbers::pi;
    kernels::fill_indexed(
        w.samples.data(), w.samples.size(),
        [&](std::size_t j) {
            const double frac = static_cast<double>(j % spp) / static_cast<double>(spp);
            const double x = two_pi * frac + spec.phase_rad;
            double v = std::sin(x);
            for (const auto& [order, amp] : spec.injection)
                v += amp * std::sin(static_cast<double>(order) * x);
            return spec.amplitude_index * v;
        },
        default_exec());
    return w;
}

} // namespace pwmlab
