#include "pwmlab/fmtct.hpp"

#include <cmath>
#include <numbers>

#include "pwmlab/error.hpp"
#include "pwmlab/kernels.hpp"
#include "pwmlab/triangle.hpp"

namespace pwmlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_k(double k) {
    if (!(k >= 0.0) || !(k < 1.0))
        fail("fmtct", "truncation level must satisfy 0 <= K < 1");
}

// L(K) such that the mean of the clamped law over a period is A_M * L / pi.
double lobe_factor(double k) {
    const double x1 = std::acos(std::sqrt(k));
    return x1 + std::sin(2.0 * x1) / 2.0 - 2.0 * k * x1;
}

double clamped_law(double x, double k) {
    const double c = std::cos(x);
    const double v = c * c - k;
    return v > 0.0 ? v : 0.0;
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth, double k) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = clamped_law(lm, k), frm = clamped_law(rm, k);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson(a, m, fa, flm, fm, left, eps / 2.0, depth - 1, k) +
           adaptive_simpson(m, b, fm, frm, fb, right, eps / 2.0, depth - 1, k);
}

} // namespace

double FmtctParams::fundamental_hz() const { return omega_m / (2.0 * kPi); }
double FmtctParams::period_s() const { return 2.0 * kPi / omega_m; }

double solve_am(double k_trunc, double m_bar) {
    check_k(k_trunc);
    if (!(m_bar >= 1.0)) fail("fmtct", "mean switching order must be >= 1");
    return kPi * m_bar / lobe_factor(k_trunc);
}

double solve_am_quadrature(double k_trunc, double m_bar) {
    check_k(k_trunc);
    if (!(m_bar >= 1.0)) fail("fmtct", "mean switching order must be >= 1");
    const double a = 0.0, b = 2.0 * kPi;
    const double fa = clamped_law(a, k_trunc), fb = clamped_law(b, k_trunc);
    const double fm = clamped_law(0.5 * (a + b), k_trunc);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double integral =
        adaptive_simpson(a, b, fa, fm, fb, whole, 1e-13, 64, k_trunc);
    return m_bar * (2.0 * kPi) / integral;
}

FmtctParams make_fmtct_params(double k_trunc, double m_bar, double fundamental_hz) {
    if (!(fundamental_hz > 0.0)) fail("fmtct", "fundamental must be positive");
    const auto rounded = std::llround(m_bar);
    if (std::abs(m_bar - static_cast<double>(rounded)) > 1e-9 ||
        rounded % 2 == 0 || rounded % 3 != 0)
        fail("fmtct", "mean switching order must be an odd multiple of 3, got " +
                          std::to_string(m_bar));
    FmtctParams p;
    p.k_trunc = k_trunc;
    p.m_bar = m_bar;
    p.a_m = solve_am(k_trunc, m_bar);
    p.omega_m = 2.0 * kPi * fundamental_hz;
    if (p.a_m * (1.0 - k_trunc) < m_bar)
        fail("fmtct", "law amplitude inconsistent with mean order");
    return p;
}

LobeTimes lobe_times(const FmtctParams& p) {
    const double t1 = std::acos(std::sqrt(p.k_trunc)) / p.omega_m;
    const double T = p.period_s();
    return {t1, T / 2.0 - t1, T / 2.0 + t1, T - t1};
}

double instantaneous_order(const FmtctParams& p, double t) {
    const double c = std::cos(p.omega_m * t);
    const double v = p.a_m * (c * c - p.k_trunc);
    return v > 0.0 ? v : 0.0;
}

namespace {

// Primitive of cos^2(x) - K valid inside a lobe.
double lobe_primitive(double x, double k) {
    return (1.0 - 2.0 * k) * x / 2.0 + std::sin(2.0 * x) / 4.0;
}

// integral of max(0, cos^2 - K) over [0, x] for x in [0, 2*pi].
double clamped_integral_one_turn(double x, double k) {
    const double x1 = std::acos(std::sqrt(k));
    const double half = lobe_factor(k) / 2.0; // integral over one half-lobe [0, x1]
    auto seg = [&](double lo, double hi) { return lobe_primitive(hi, k) - lobe_primitive(lo, k); };

    if (x <= x1) return seg(0.0, x);
    if (x <= kPi - x1) return half;
    if (x <= kPi + x1) return half + seg(kPi - x1, x);
    if (x <= 2.0 * kPi - x1) return 3.0 * half;
    return 3.0 * half + seg(2.0 * kPi - x1, x);
}

} // namespace

double phase_integral(const FmtctParams& p, double t) {
    const double turns = p.omega_m * t / (2.0 * kPi);
    double whole = std::floor(turns);
    double x = (turns - whole) * 2.0 * kPi;
    const double per_turn = 2.0 * lobe_factor(p.k_trunc);
    return p.a_m * (whole * per_turn + clamped_integral_one_turn(x, p.k_trunc));
}

SampledWaveform make_fmtct_carrier(const FmtctParams& p, double sample_rate_hz,
                                   double theta_offset_rad, double time_delay_s) {
    const double f0 = p.fundamental_hz();
    const double ratio = sample_rate_hz / f0;
    const auto spp = static_cast<std::size_t>(std::llround(ratio));
    checked_samples_per_period(sample_rate_hz, f0, spp);

    const double dt = 1.0 / sample_rate_hz;
    const double w_scale = p.omega_m * p.a_m; // w_i(t) = w_scale * clamped shape

    // Sampled law on this phase's time base.
    std::vector<double> wi(spp + 1);
    kernels::fill_indexed(
        wi.data(), spp + 1,
        [&](std::size_t j) {
            const double t = static_cast<double>(j) * dt - time_delay_s;
            const double c = std::cos(p.omega_m * t);
            const double v = c * c - p.k_trunc;
            return v > 0.0 ? w_scale * v : 0.0;
        },
        default_exec());

    // Trapezoidal phase accumulation. Inside blocked windows both endpoints
    // are exactly zero, so theta is exactly constant and the carrier holds.
    std::vector<double> theta(spp + 1);
    theta[0] = -phase_integral(p, time_delay_s);
    for (std::size_t j = 1; j <= spp; ++j)
        theta[j] = theta[j - 1] + 0.5 * (wi[j - 1] + wi[j]) * dt;

    // One period must close to 2*pi*m_bar within one sample's worth of phase.
    const double accumulated = theta[spp] - theta[0];
    const double expected = 2.0 * kPi * p.m_bar;
    const double max_step = w_scale * (1.0 - p.k_trunc) * dt;
    if (std::abs(accumulated - expected) > max_step)
        fail("fmtct", "carrier phase accumulation error exceeds one sample of phase; "
                      "raise the sample rate");

    SampledWaveform carrier;
    carrier.sample_rate_hz = sample_rate_hz;
    carrier.fundamental_hz = f0;
    carrier.samples.resize(spp);
    kernels::fill_indexed(
        carrier.samples.data(), spp,
        [&](std::size_t j) { return triangle_from_phase(theta[j] + theta_offset_rad); },
        default_exec());
    return carrier;
}

} // namespace pwmlab
