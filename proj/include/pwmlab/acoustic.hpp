#pragma once

#include <vector>

#include "pwmlab/spectrum.hpp"

namespace pwmlab {

// Slot/pole data of the induction machine whose noise lines are predicted.
struct MotorGeometry {
    int pole_pairs = 2;
    int stator_slots = 36;
    int rotor_slots = 26;
    int stator_phases = 3;
    double slip = 0.0; // per-unit, [0, 1)
};

void validate(const MotorGeometry& geom);

enum class Mechanism {
    rotor_spatial,            // rotor slot-harmonic products
    stator_spatial,           // stator slot-harmonic products, radial force at 2f
    stator_rotor_interaction, // mixed stator/rotor slot products
    switching_sideband,       // carrier sidebands of the inverter, mode r = 0
    temporal_harmonic,        // electrical harmonic n mapped to (n +- 1) f
};

const char* mechanism_name(Mechanism m);

struct AcousticLine {
    double frequency_hz = 0.0;
    Mechanism mechanism = Mechanism::rotor_spatial;
    int k_index = 0;          // harmonic index within its family, 0 if n/a
    int sideband_a = 0;       // carrier multiple of a sideband line
    int sideband_b = 0;       // fundamental multiple of a sideband line
    int vibration_mode_r = 0; // only meaningful when has_mode is set
    bool has_mode = false;
    double amplitude_proxy = 1.0; // relative electrical magnitude where known
    double electrical_hz = 0.0;   // electrical line behind this one, 0 if none
};

// Slot-geometry noise lines for k = 1..k_max: the rotor family
// 2f|1 +- k(s2/p)(1-s)|, the stator radial force at 2f (mode r = 4) and the
// stator/rotor interaction family f*k(s2/p)(1-s), f|k(s2/p)(1-s) +- 2|.
// Sorted by frequency.
std::vector<AcousticLine> spatial_harmonics(const MotorGeometry& geom, double f,
                                            int k_max);

// Carrier sidebands: electrical lines a*f_sw +- b*f for a, b in 1..order_max
// with a + b odd (same-parity pairs cancel), each then heard at
// |+-(electrical) - f|, mode r = 0. Sorted by frequency, duplicates removed.
std::vector<AcousticLine> switching_sidebands(double f_sw, double f, int order_max);

// Every electrical harmonic n >= 2 whose RMS exceeds threshold * fundamental
// is heard at (n - 1) f and (n + 1) f, carrying the relative magnitude.
std::vector<AcousticLine> temporal_map(const HarmonicSpectrum& s, double f,
                                       double threshold = 0.01);

// One audible line with every mechanism that lands on it.
struct PredictedLine {
    double frequency_hz = 0.0;
    std::vector<AcousticLine> sources;
};

struct AcousticPrediction {
    double fundamental_hz = 0.0;
    double switching_hz = 0.0; // 0 means sine-fed, no sidebands
    std::vector<PredictedLine> lines;
};

// Union of the three generators, sorted by frequency; lines closer than 1 Hz
// are merged and keep every contributor. Pass f_sw = 0 for a sine-fed motor.
AcousticPrediction predict(const MotorGeometry& geom, const HarmonicSpectrum& electrical,
                           double f, double f_sw, int k_max = 5, int order_max = 4,
                           double threshold = 0.01);

} // namespace pwmlab
