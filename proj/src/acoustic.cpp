#include "pwmlab/acoustic.hpp"

#include <algorithm>
#include <cmath>

#include "pwmlab/error.hpp"

namespace pwmlab {

namespace {

void sort_lines(std::vector<AcousticLine>& lines) {
    std::sort(lines.begin(), lines.end(), [](const AcousticLine& a, const AcousticLine& b) {
        if (a.frequency_hz != b.frequency_hz) return a.frequency_hz < b.frequency_hz;
        if (a.electrical_hz != b.electrical_hz) return a.electrical_hz < b.electrical_hz;
        if (a.k_index != b.k_index) return a.k_index < b.k_index;
        return static_cast<int>(a.mechanism) < static_cast<int>(b.mechanism);
    });
}

void check_fundamental(double f) {
    if (!(f > 0.0)) fail("acoustic", "fundamental must be positive");
}

} // namespace

void validate(const MotorGeometry& geom) {
    if (geom.pole_pairs < 1) fail("acoustic", "need at least one pole pair");
    if (geom.rotor_slots < 1 || geom.stator_slots < 1)
        fail("acoustic", "slot counts must be positive");
    if (geom.stator_phases < 3) fail("acoustic", "need at least three stator phases");
    if (geom.slip < 0.0 || geom.slip >= 1.0) fail("acoustic", "slip must lie in [0, 1)");
}

const char* mechanism_name(Mechanism m) {
    switch (m) {
    case Mechanism::rotor_spatial: return "rotor_spatial";
    case Mechanism::stator_spatial: return "stator_spatial";
    case Mechanism::stator_rotor_interaction: return "stator_rotor_interaction";
    case Mechanism::switching_sideband: return "switching_sideband";
    case Mechanism::temporal_harmonic: return "temporal_harmonic";
    }
    return "unknown";
}

std::vector<AcousticLine> spatial_harmonics(const MotorGeometry& geom, double f,
                                            int k_max) {
    validate(geom);
    check_fundamental(f);
    if (k_max < 1) fail("acoustic", "need at least one slot-harmonic index");

    // Slot passing ratio: rotor slots per pole pair, scaled by rotor speed.
    const double ratio = static_cast<double>(geom.rotor_slots) /
                         static_cast<double>(geom.pole_pairs) * (1.0 - geom.slip);

    std::vector<AcousticLine> out;
    AcousticLine stator;
    stator.frequency_hz = 2.0 * f;
    stator.mechanism = Mechanism::stator_spatial;
    stator.vibration_mode_r = 4;
    stator.has_mode = true;
    out.push_back(stator);

    for (int k = 1; k <= k_max; ++k) {
        for (double sign : {+1.0, -1.0}) {
            AcousticLine rotor;
            rotor.frequency_hz = std::abs(2.0 * f * (1.0 + sign * k * ratio));
            rotor.mechanism = Mechanism::rotor_spatial;
            rotor.k_index = k;
            out.push_back(rotor);
        }
        for (double add : {0.0, +2.0, -2.0}) {
            AcousticLine mix;
            mix.frequency_hz = std::abs(f * (k * ratio + add));
            mix.mechanism = Mechanism::stator_rotor_interaction;
            mix.k_index = k;
            out.push_back(mix);
        }
    }
    sort_lines(out);
    return out;
}

std::vector<AcousticLine> switching_sidebands(double f_sw, double f, int order_max) {
    check_fundamental(f);
    if (!(f_sw > f)) fail("acoustic", "switching frequency must exceed the fundamental");
    if (order_max < 1) fail("acoustic", "need at least first-order sidebands");

    std::vector<AcousticLine> out;
    for (int a = 1; a <= order_max; ++a) {
        for (int b = 1; b <= order_max; ++b) {
            if ((a + b) % 2 == 0) continue; // same parity never radiates
            for (double sign : {+1.0, -1.0}) {
                const double electrical = std::abs(a * f_sw + sign * b * f);
                for (double outer : {+1.0, -1.0}) {
                    AcousticLine line;
                    line.frequency_hz = std::abs(outer * electrical - f);
                    line.mechanism = Mechanism::switching_sideband;
                    line.sideband_a = a;
                    line.sideband_b = b;
                    line.vibration_mode_r = 0;
                    line.has_mode = true;
                    line.electrical_hz = electrical;
                    out.push_back(line);
                }
            }
        }
    }
    sort_lines(out);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const AcousticLine& a, const AcousticLine& b) {
                              return a.frequency_hz == b.frequency_hz &&
                                     a.electrical_hz == b.electrical_hz &&
                                     a.sideband_a == b.sideband_a &&
                                     a.sideband_b == b.sideband_b;
                          }),
              out.end());
    return out;
}

std::vector<AcousticLine> temporal_map(const HarmonicSpectrum& s, double f,
                                       double threshold) {
    check_fundamental(f);
    if (!(threshold > 0.0) || threshold >= 1.0)
        fail("acoustic", "threshold must lie in (0, 1)");
    if (s.bins.empty()) fail("acoustic", "spectrum has no fundamental bin");
    const double fund = s.bins[0].rms;
    if (!(fund > 0.0)) fail("acoustic", "spectrum fundamental is zero");

    std::vector<AcousticLine> out;
    for (const HarmonicBin& bin : s.bins) {
        if (bin.order < 2) continue;
        const double rel = bin.rms / fund;
        if (rel <= threshold) continue;
        for (int step : {-1, +1}) {
            AcousticLine line;
            line.frequency_hz = (bin.order + step) * f;
            line.mechanism = Mechanism::temporal_harmonic;
            line.k_index = bin.order;
            line.amplitude_proxy = rel;
            line.electrical_hz = bin.order * f;
            out.push_back(line);
        }
    }
    sort_lines(out);
    return out;
}

AcousticPrediction predict(const MotorGeometry& geom, const HarmonicSpectrum& electrical,
                           double f, double f_sw, int k_max, int order_max,
                           double threshold) {
    std::vector<AcousticLine> all = spatial_harmonics(geom, f, k_max);
    if (f_sw > 0.0) {
        auto sb = switching_sidebands(f_sw, f, order_max);
        all.insert(all.end(), sb.begin(), sb.end());
    }
    if (!electrical.bins.empty()) {
        auto tm = temporal_map(electrical, f, threshold);
        all.insert(all.end(), tm.begin(), tm.end());
    }
    sort_lines(all);

    AcousticPrediction pred;
    pred.fundamental_hz = f;
    pred.switching_hz = f_sw;
    for (std::size_t i = 0; i < all.size();) {
        PredictedLine merged;
        merged.frequency_hz = all[i].frequency_hz;
        std::size_t j = i;
        while (j < all.size() && all[j].frequency_hz - merged.frequency_hz <= 1.0)
            merged.sources.push_back(all[j++]);
        pred.lines.push_back(std::move(merged));
        i = j;
    }
    return pred;
}

} // namespace pwmlab
