#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pwmlab {

// Uniformly sampled real signal, synchronous with a fundamental frequency.
// The sample count per fundamental period must be an exact integer and a
// power of two; every synthesis and analysis routine relies on that.
struct SampledWaveform {
    double sample_rate_hz = 0.0;
    double fundamental_hz = 0.0;
    std::vector<double> samples;

    std::size_t samples_per_period() const; // validates the grid
    std::size_t periods() const;
    double dt() const { return 1.0 / sample_rate_hz; }
    bool same_grid(const SampledWaveform& other) const;
};

// Boolean gate train on the same kind of grid. Values are 0/1.
struct PulseTrain {
    double sample_rate_hz = 0.0;
    double fundamental_hz = 0.0;
    std::vector<std::uint8_t> values;

    std::size_t samples_per_period() const;
};

// Number of 0 -> 1 transitions, treating the train as circular (the synthesis
// is exactly periodic, so the wrap edge is a real edge).
std::size_t count_rising_edges(const PulseTrain& train);

// Distinct sample values of a stepped waveform (voltage levels). Exact
// comparison is intended: level synthesis produces exact multiples of vdc.
std::vector<double> distinct_levels(const SampledWaveform& w);

// Validates rate/fundamental and returns the per-period sample count.
std::size_t checked_samples_per_period(double sample_rate_hz, double fundamental_hz,
                                       std::size_t total_samples);

} // namespace pwmlab
