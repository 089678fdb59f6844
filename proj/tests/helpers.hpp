#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "pwmlab/waveform.hpp"

namespace testutil {

inline constexpr double kPi = std::numbers::pi;

// Sample indices of 0 -> 1 transitions, circular.
inline std::vector<std::size_t> rising_edges(const pwmlab::PulseTrain& t) {
    std::vector<std::size_t> out;
    const std::size_t n = t.values.size();
    for (std::size_t j = 0; j < n; ++j)
        if (t.values[j] && !t.values[(j + n - 1) % n]) out.push_back(j);
    return out;
}

// Builds a synchronous waveform from a function of the elapsed period count
// u = j / spp (u runs across all periods).
template <typename F>
pwmlab::SampledWaveform make_wave(double fundamental_hz, std::size_t spp,
                                  std::size_t periods, F&& f) {
    pwmlab::SampledWaveform w;
    w.fundamental_hz = fundamental_hz;
    w.sample_rate_hz = fundamental_hz * static_cast<double>(spp);
    w.samples.resize(spp * periods);
    for (std::size_t j = 0; j < w.samples.size(); ++j)
        w.samples[j] = f(static_cast<double>(j) / static_cast<double>(spp));
    return w;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Circular distance between two sample indices on a ring of n samples.
inline double ring_distance(double a, double b, double n) {
    double d = std::fmod(std::abs(a - b), n);
    return std::min(d, n - d);
}

// True when the two edge lists have equal size and each edge of `b` sits
// within `tol` samples of the corresponding edge of `a` shifted by `shift`
// (all arithmetic on the ring of n samples).
inline bool edges_match_shifted(const std::vector<std::size_t>& a,
                                const std::vector<std::size_t>& b, double shift,
                                std::size_t n, double tol) {
    if (a.size() != b.size()) return false;
    const double nn = static_cast<double>(n);
    for (std::size_t e : a) {
        const double want = std::fmod(static_cast<double>(e) + shift, nn);
        bool found = false;
        for (std::size_t f : b)
            if (ring_distance(want, static_cast<double>(f), nn) <= tol) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

// Number of sample-to-sample value changes of `w` with both endpoints inside
// [first, last] (indices into one period, no wrap).
inline std::size_t changes_within(const std::vector<double>& samples, std::size_t first,
                                  std::size_t last) {
    std::size_t changes = 0;
    for (std::size_t j = first; j + 1 <= last; ++j)
        if (samples[j] != samples[j + 1]) ++changes;
    return changes;
}

inline std::size_t changes_within(const std::vector<std::uint8_t>& values,
                                  std::size_t first, std::size_t last) {
    std::size_t changes = 0;
    for (std::size_t j = first; j + 1 <= last; ++j)
        if (values[j] != values[j + 1]) ++changes;
    return changes;
}

} // namespace testutil
