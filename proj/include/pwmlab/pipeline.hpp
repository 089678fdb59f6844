#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pwmlab/acoustic.hpp"
#include "pwmlab/config.hpp"
#include "pwmlab/inverter.hpp"
#include "pwmlab/spectrum.hpp"

namespace pwmlab {

// Harmonic range of the reported THD figures (the usual analyzer window).
inline constexpr int kThdOrders = 50;

struct PipelineResult {
    ModulationConfig config; // as run, amplitude index included
    GateSchedule schedule;
    PhaseLineVoltages voltages;
    HarmonicSpectrum phase_spectrum; // phase 0, truncated to export_orders
    HarmonicSpectrum line_spectrum;  // phase0 - phase1, truncated likewise
    int export_orders = kThdOrders;
    double thd_line_n50 = 0.0;
    double thd_phase_n50 = 0.0;
    double thd_line_nyquist = 0.0;
    double fundamental_rms_phase_v = 0.0;
    double fundamental_rms_line_v = 0.0;
    double total_rms_phase_v = 0.0;
    double total_rms_line_v = 0.0;
    std::size_t pulse_count_per_leg = 0; // rising edges of one reference leg per period
    std::size_t vanished_pulses = 0;
    std::vector<std::string> warnings;
};

// Full run: optional fundamental normalization, gate synthesis, voltage
// assembly, spectra and distortion figures. export_orders bounds the stored
// spectra; the distortion figures always use kThdOrders and Nyquist.
PipelineResult run_pipeline(const ModulationConfig& c, int export_orders = kThdOrders);

struct NormalizationResult {
    ModulationConfig config; // amplitude index replaced by the solution
    double achieved_rms_v = 0.0;
    int evaluations = 0;
};

// Monotone scalar search on the amplitude index so the line-voltage
// fundamental RMS hits target_rms_v (within 0.02%). Fails with the achievable
// range when the target lies outside it.
NormalizationResult normalize_fundamental(const ModulationConfig& c, double target_rms_v);

struct SweepRow {
    double k_trunc = 0.0;
    double a_m = 0.0;
    double t1_ms = 0.0;
    double amplitude_index = 0.0;
    double thd_line_n50 = 0.0;
    double fundamental_rms_line_v = 0.0;
    double total_rms_line_v = 0.0;
    std::size_t pulse_count = 0;
    std::string error; // nonempty when this row failed; other rows still run
};

// Re-runs the pipeline for each truncation level, keeping everything else
// (including any RMS target) from the base config.
std::vector<SweepRow> sweep_k(const ModulationConfig& base,
                              const std::vector<double>& k_list);

struct CompareRow {
    std::string label;
    ModulationConfig config;
    double thd_line_n50 = 0.0;
    double thd_phase_n50 = 0.0;
    double fundamental_rms_line_v = 0.0;
    double total_rms_line_v = 0.0;
    double total_rms_phase_v = 0.0;
    std::size_t pulse_count = 0;
    AcousticPrediction acoustics;
    std::string error;
};

// One pipeline per config plus the acoustic prediction its spectrum implies.
std::vector<CompareRow> compare_strategies(const std::vector<ModulationConfig>& configs,
                                           const MotorGeometry& geom);

} // namespace pwmlab
