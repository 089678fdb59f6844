#include "pwmlab/waveform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pwmlab/error.hpp"

namespace pwmlab {

std::size_t checked_samples_per_period(double sample_rate_hz, double fundamental_hz,
                                       std::size_t total_samples) {
    if (!(fundamental_hz > 0.0) || !(sample_rate_hz > 0.0))
        fail("waveform", "sample rate and fundamental must be positive");
    const double ratio = sample_rate_hz / fundamental_hz;
    const auto spp = static_cast<std::size_t>(std::llround(ratio));
    if (spp == 0 || std::abs(ratio - static_cast<double>(spp)) > 1e-6)
        fail("waveform", "sample rate is not an integer multiple of the fundamental");
    if (!std::has_single_bit(spp))
        fail("waveform", "samples per period must be a power of two, got " + std::to_string(spp));
    if (total_samples % spp != 0)
        fail("waveform", "sample count does not cover whole periods");
    return spp;
}

std::size_t SampledWaveform::samples_per_period() const {
    return checked_samples_per_period(sample_rate_hz, fundamental_hz, samples.size());
}

std::size_t SampledWaveform::periods() const {
    return samples.size() / samples_per_period();
}

bool SampledWaveform::same_grid(const SampledWaveform& other) const {
    return sample_rate_hz == other.sample_rate_hz &&
           fundamental_hz == other.fundamental_hz &&
           samples.size() == other.samples.size();
}

std::size_t PulseTrain::samples_per_period() const {
    return checked_samples_per_period(sample_rate_hz, fundamental_hz, values.size());
}

std::size_t count_rising_edges(const PulseTrain& train) {
    const auto& v = train.values;
    if (v.empty()) return 0;
    std::size_t edges = 0;
    std::uint8_t prev = v.back(); // circular
    for (std::uint8_t cur : v) {
        edges += (cur && !prev);
        prev = cur;
    }
    return edges;
}

std::vector<double> distinct_levels(const SampledWaveform& w) {
    std::vector<double> levels(w.samples);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    return levels;
}

} // namespace pwmlab
