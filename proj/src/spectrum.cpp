#include "pwmlab/spectrum.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

#include "pwmlab/error.hpp"
#include "pwmlab/kernels.hpp"

namespace pwmlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Above this many bins a full transform beats one Goertzel pass per bin.
constexpr int kGoertzelBinLimit = 512;

std::vector<double> fold_periods(const SampledWaveform& w, std::size_t spp) {
    const std::size_t periods = w.samples.size() / spp;
    std::vector<double> folded(spp, 0.0);
    for (std::size_t p = 0; p < periods; ++p) {
        const double* src = w.samples.data() + p * spp;
        for (std::size_t j = 0; j < spp; ++j) folded[j] += src[j];
    }
    const double inv = 1.0 / static_cast<double>(periods);
    for (double& v : folded) v *= inv;
    return folded;
}

// Iterative radix-2 transform, -i convention, length a power of two.
void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // One twiddle table for the final stage covers every earlier stage by
    // striding, since stage-l twiddles are the even-indexed entries.
    std::vector<std::complex<double>> twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        twiddle[k] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * twiddle[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

} // namespace

const HarmonicBin* HarmonicSpectrum::find(int order) const {
    if (order < 1 || order > static_cast<int>(bins.size())) return nullptr;
    return &bins[static_cast<std::size_t>(order - 1)];
}

double HarmonicSpectrum::rms_at(int order) const {
    const HarmonicBin* b = find(order);
    return b ? b->rms : 0.0;
}

HarmonicSpectrum spectrum(const SampledWaveform& w, int n_max) {
    const std::size_t spp =
        checked_samples_per_period(w.sample_rate_hz, w.fundamental_hz, w.samples.size());
    const int nyquist = static_cast<int>(spp / 2);
    if (n_max < 1) fail("spectrum", "need at least the fundamental bin");
    if (n_max > nyquist)
        fail("spectrum", "harmonic order " + std::to_string(n_max) +
                             " exceeds the Nyquist order " + std::to_string(nyquist));

    const std::vector<double> folded = fold_periods(w, spp);
    const double n = static_cast<double>(spp);

    // Raw DFT values for orders 0..n_max.
    std::vector<std::complex<double>> x(static_cast<std::size_t>(n_max) + 1);
    if (n_max <= kGoertzelBinLimit) {
        std::vector<std::size_t> orders(static_cast<std::size_t>(n_max) + 1);
        for (std::size_t k = 0; k < orders.size(); ++k) orders[k] = k;
        kernels::goertzel_bank(folded.data(), spp, orders.data(), orders.size(),
                               x.data(), default_exec());
    } else {
        std::vector<std::complex<double>> a(spp);
        for (std::size_t j = 0; j < spp; ++j) a[j] = {folded[j], 0.0};
        fft_inplace(a);
        for (int k = 0; k <= n_max; ++k) x[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)];
    }

    HarmonicSpectrum s;
    s.fundamental_hz = w.fundamental_hz;
    s.dc = x[0].real() / n;
    s.bins.resize(static_cast<std::size_t>(n_max));
    for (int k = 1; k <= n_max; ++k) {
        const std::complex<double> xk = x[static_cast<std::size_t>(k)];
        HarmonicBin& b = s.bins[static_cast<std::size_t>(k - 1)];
        b.order = k;
        // The Nyquist bin has no conjugate partner, so its scale differs.
        b.rms = (k == nyquist) ? std::abs(xk) / n : std::sqrt(2.0) * std::abs(xk) / n;
        b.phase_rad = std::atan2(xk.imag(), xk.real()) + kPi / 2.0;
    }
    return s;
}

double thd(const HarmonicSpectrum& s, int n_max) {
    if (n_max < 2) fail("spectrum", "distortion needs orders beyond the fundamental");
    if (n_max > static_cast<int>(s.bins.size()))
        fail("spectrum", "spectrum holds " + std::to_string(s.bins.size()) +
                             " orders, fewer than requested " + std::to_string(n_max));
    const double fund = s.bins[0].rms;
    if (!(fund > 1e-12))
        fail("spectrum", "fundamental is absent; distortion ratio undefined");
    double acc = 0.0;
    for (int k = 2; k <= n_max; ++k) {
        const double r = s.bins[static_cast<std::size_t>(k - 1)].rms;
        acc += r * r;
    }
    return std::sqrt(acc) / fund;
}

double total_rms(const SampledWaveform& w) {
    if (w.samples.empty()) fail("spectrum", "empty waveform has no RMS");
    double acc = 0.0;
    for (double v : w.samples) acc += v * v;
    return std::sqrt(acc / static_cast<double>(w.samples.size()));
}

} // namespace pwmlab
