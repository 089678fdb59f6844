#pragma once

#include <utility>
#include <vector>

#include "pwmlab/waveform.hpp"

namespace pwmlab {

// Modulating (reference) wave: a fundamental sine plus optional odd-harmonic
// injection. m(t) = Ma * [sin(w t + phi) + sum_h c_h * sin(h*(w t + phi))].
struct ModulatingSpec {
    double fundamental_hz = 50.0;
    double amplitude_index = 0.9;             // Ma, in (0, 1.2]
    double phase_rad = 0.0;
    // (harmonic order, amplitude relative to the fundamental). Orders must be
    // odd and >= 3 so half-wave symmetry is preserved.
    std::vector<std::pair<int, double>> injection;
};

// The classic third-harmonic injection that flattens the crest: peak drops to
// sqrt(3)/2 of Ma, buying headroom before overmodulation.
std::vector<std::pair<int, double>> default_injection();

void validate(const ModulatingSpec& spec);

// Pointwise evaluation (exact, used by synthesis and tests alike).
double modulating_value(const ModulatingSpec& spec, double t);

SampledWaveform make_modulating(const ModulatingSpec& spec, std::size_t n_periods,
                                double sample_rate_hz);

} // namespace pwmlab
