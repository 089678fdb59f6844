#pragma once

// Frequency-modulated triangular carrier with truncation (FMTCt). The carrier
// frequency follows a clamped cosine-squared law: the instantaneous switching
// order is
//
//     M(t) = max(0, A_M * (cos^2(w_m t) - K)),    0 <= K < 1,
//
// so switching concentrates around the modulating wave's zero crossings and
// stops entirely inside two blocked windows per period centered on its peaks.
// A_M is solved so the mean of M(t) over one fundamental period equals the
// requested average order m_bar, which fixes the pulse budget.

#include "pwmlab/waveform.hpp"

namespace pwmlab {

struct FmtctParams {
    double k_trunc = 0.0;   // truncation level K of the frequency law
    double m_bar = 15.0;    // mean switching order per fundamental period
    double a_m = 0.0;       // law amplitude, from solve_am
    double omega_m = 0.0;   // fundamental angular frequency, rad/s

    double fundamental_hz() const;
    double period_s() const;
};

// Boundaries of the switching lobes: the law is positive on [0,t1], [t2,t3]
// and [t4,T], zero (blocked) on (t1,t2) and (t3,t4).
// t1 = arccos(sqrt(K))/w_m, t2 = T/2 - t1, t3 = T/2 + t1, t4 = T - t1.
struct LobeTimes {
    double t1, t2, t3, t4;
};

// Closed form: A_M = pi * m_bar / L(K) with x1 = arccos(sqrt(K)) and
// L = x1 + sin(2*x1)/2 - 2*K*x1. Accepts any m_bar >= 1 (the carrier type is
// stricter, see make_fmtct_params).
double solve_am(double k_trunc, double m_bar);

// Same quantity through numeric quadrature of the clamped law (adaptive
// Simpson, no use of the lobe algebra). Kept as a genuinely separate route:
// the two are cross-checked by the verification command and the tests.
double solve_am_quadrature(double k_trunc, double m_bar);

// Validates and assembles parameters. m_bar must be an odd multiple of 3 so
// the carrier lands on the half-wave and three-phase symmetries.
FmtctParams make_fmtct_params(double k_trunc, double m_bar, double fundamental_hz);

LobeTimes lobe_times(const FmtctParams& p);

// M(t) = max(0, a_m * (cos^2(w_m t) - K)), dimensionless.
double instantaneous_order(const FmtctParams& p, double t);

// Exact carrier phase theta(t) = w_m * integral of M over [0, t], evaluated
// from the piecewise primitive of the law. Monotone, theta(T) = 2*pi*m_bar.
double phase_integral(const FmtctParams& p, double t);

// Carrier samples over one fundamental period: tri(theta(t) + theta_offset)
// with theta accumulated by trapezoidal integration of the sampled law.
// The carrier holds its last value wherever the law is zero. time_delay_s
// shifts the whole law in time (used for the other two phases of a
// three-phase build); theta(0) is then seeded from phase_integral so the
// result equals the undelayed carrier evaluated at t - time_delay_s.
SampledWaveform make_fmtct_carrier(const FmtctParams& p, double sample_rate_hz,
                                   double theta_offset_rad = 0.0,
                                   double time_delay_s = 0.0);

} // namespace pwmlab
