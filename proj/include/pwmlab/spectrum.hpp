#pragma once

#include <vector>

#include "pwmlab/waveform.hpp"

namespace pwmlab {

// One harmonic of the fundamental. The component reconstructs as
//   x_n(t) = sqrt(2) * rms * sin(n * 2*pi*f * t + phase_rad).
struct HarmonicBin {
    int order = 0;
    double rms = 0.0;
    double phase_rad = 0.0;
};

struct HarmonicSpectrum {
    double fundamental_hz = 0.0;
    double dc = 0.0;
    std::vector<HarmonicBin> bins; // orders 1..n_max, ascending, no gaps

    const HarmonicBin* find(int order) const;
    double rms_at(int order) const; // 0 when the order is out of range
};

// Bin-exact harmonic analysis of a synchronously sampled waveform. Periods are
// folded (averaged) first, so only harmonics of the fundamental survive.
// Fails when n_max exceeds the Nyquist order samples_per_period/2.
HarmonicSpectrum spectrum(const SampledWaveform& w, int n_max);

// sqrt(sum of squared rms over orders 2..n_max) / rms of the fundamental.
// Fails when the spectrum does not reach n_max or the fundamental is absent.
double thd(const HarmonicSpectrum& s, int n_max);

// Time-domain RMS over the whole record.
double total_rms(const SampledWaveform& w);

} // namespace pwmlab
