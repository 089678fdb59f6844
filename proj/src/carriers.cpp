#include "pwmlab/carriers.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pwmlab/error.hpp"
#include "pwmlab/kernels.hpp"
#include "pwmlab/triangle.hpp"

namespace pwmlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_common(const CarrierSpec& spec, double fundamental_hz) {
    if (spec.cells < 1) fail("carriers", "need at least one cell per phase");
    if (!(fundamental_hz > 0.0)) fail("carriers", "fundamental must be positive");
    if (spec.kind != CarrierSpec::Kind::fm_truncated && !(spec.order_m >= 1.0))
        fail("carriers", "carrier order must be >= 1");
}

// Full-range triangle of order M on a delayed time base, with a phase offset
// in carrier radians. Sample arguments use the exact per-period fraction so
// periods are sample-identical.
SampledWaveform fixed_triangle(double order_m, double fundamental_hz,
                               double sample_rate_hz, double time_delay_s,
                               double offset_rad) {
    const auto spp = checked_samples_per_period(sample_rate_hz, fundamental_hz, 0);
    SampledWaveform w;
    w.sample_rate_hz = sample_rate_hz;
    w.fundamental_hz = fundamental_hz;
    w.samples.resize(spp);
    const double delay_frac = time_delay_s * fundamental_hz;
    kernels::fill_indexed(
        w.samples.data(), spp,
        [&](std::size_t j) {
            const double frac = static_cast<double>(j) / static_cast<double>(spp) - delay_frac;
            return triangle_from_phase(2.0 * kPi * order_m * frac + offset_rad);
        },
        default_exec());
    return w;
}

std::vector<double> default_ps_offsets_deg(int cells) {
    std::vector<double> offs(cells);
    for (int c = 0; c < cells; ++c) offs[c] = 180.0 * c / cells;
    return offs;
}

std::vector<double> ps_offsets_deg(const CarrierSpec& spec) {
    if (spec.phase_offsets_deg.empty()) return default_ps_offsets_deg(spec.cells);
    if (static_cast<int>(spec.phase_offsets_deg.size()) != spec.cells)
        fail("carriers", "phase offset list must have one entry per cell");
    const double step = 180.0 / spec.cells;
    for (double d : spec.phase_offsets_deg) {
        const double m = d / step;
        if (std::abs(m - std::round(m)) > 1e-9)
            fail("carriers", "phase offsets must be multiples of 180deg/cells");
    }
    return spec.phase_offsets_deg;
}

SampledWaveform band_mapped(const SampledWaveform& tri, double lo, double height) {
    SampledWaveform w = tri;
    for (double& v : w.samples) v = lo + (v + 1.0) * 0.5 * height;
    return w;
}

} // namespace

std::vector<std::string> carrier_warnings(const CarrierSpec& spec) {
    std::vector<std::string> out;
    if (spec.kind == CarrierSpec::Kind::fm_truncated) return out;
    const double m = spec.order_m;
    const auto rounded = std::llround(m);
    if (std::abs(m - static_cast<double>(rounded)) > 1e-9) {
        out.push_back("carrier order is not an integer; the carrier will not be "
                      "synchronous with the fundamental");
        return out;
    }
    if (rounded % 2 == 0)
        out.push_back("even carrier order breaks half-wave symmetry and admits "
                      "even harmonics");
    if (rounded % 3 != 0)
        out.push_back("carrier order not a multiple of 3 breaks three-phase "
                      "symmetry; triplen harmonics will not cancel in line voltage");
    return out;
}

std::vector<SampledWaveform> make_reference_carriers(const CarrierSpec& spec,
                                                     double fundamental_hz,
                                                     double sample_rate_hz,
                                                     double time_delay_s) {
    check_common(spec, fundamental_hz);
    std::vector<SampledWaveform> out;
    switch (spec.kind) {
    case CarrierSpec::Kind::fixed_triangle:
        out.push_back(fixed_triangle(spec.order_m, fundamental_hz, sample_rate_hz,
                                     time_delay_s, 0.0));
        break;
    case CarrierSpec::Kind::level_shifted_set: {
        // 2*cells contiguous bands covering [-1, 1], bottom-up, all in phase.
        const SampledWaveform base = fixed_triangle(spec.order_m, fundamental_hz,
                                                    sample_rate_hz, time_delay_s, 0.0);
        const double height = 1.0 / spec.cells;
        for (int b = 0; b < 2 * spec.cells; ++b)
            out.push_back(band_mapped(base, -1.0 + b * height, height));
        break;
    }
    case CarrierSpec::Kind::phase_shifted_set: {
        const auto offsets = ps_offsets_deg(spec);
        for (int c = 0; c < spec.cells; ++c)
            out.push_back(fixed_triangle(spec.order_m, fundamental_hz, sample_rate_hz,
                                         time_delay_s, offsets[c] * kPi / 180.0));
        break;
    }
    case CarrierSpec::Kind::fm_truncated:
        fail("carriers", "the frequency-modulated carrier is built per cell; "
                         "use gating_carriers or make_fmtct_carrier");
    }
    return out;
}

std::vector<SampledWaveform> gating_carriers(const CarrierSpec& spec,
                                             double fundamental_hz,
                                             double sample_rate_hz,
                                             double time_delay_s) {
    check_common(spec, fundamental_hz);
    std::vector<SampledWaveform> out;
    switch (spec.kind) {
    case CarrierSpec::Kind::fixed_triangle: {
        const auto set = make_reference_carriers(spec, fundamental_hz, sample_rate_hz,
                                                 time_delay_s);
        for (int c = 0; c < spec.cells; ++c) out.push_back(set[0]);
        break;
    }
    case CarrierSpec::Kind::level_shifted_set: {
        const auto set = make_reference_carriers(spec, fundamental_hz, sample_rate_hz,
                                                 time_delay_s);
        // Positive bands sit above index `cells`; cell c gets [c, c+1]/cells.
        for (int c = 0; c < spec.cells; ++c) out.push_back(set[spec.cells + c]);
        break;
    }
    case CarrierSpec::Kind::phase_shifted_set:
        out = make_reference_carriers(spec, fundamental_hz, sample_rate_hz, time_delay_s);
        break;
    case CarrierSpec::Kind::fm_truncated: {
        if (std::abs(spec.fmtct.fundamental_hz() - fundamental_hz) > 1e-9)
            fail("carriers", "carrier law fundamental disagrees with the build");
        // The cell offset is added to the phase accumulator, so cell 2 of a
        // two-cell phase runs 90 carrier degrees ahead.
        for (int c = 0; c < spec.cells; ++c)
            out.push_back(make_fmtct_carrier(spec.fmtct, sample_rate_hz,
                                             c * kPi / spec.cells, time_delay_s));
        break;
    }
    }
    return out;
}

} // namespace pwmlab
