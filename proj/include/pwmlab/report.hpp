#pragma once

#include <string>
#include <vector>

#include "pwmlab/acoustic.hpp"
#include "pwmlab/pipeline.hpp"

namespace pwmlab {

// Locale-free fixed formatting; identical input bits give identical text.
std::string format_double(double v);

// Time-domain export: t_s plus the three phase and three line voltages,
// every stride-th sample.
std::string waveform_csv(const PipelineResult& r, std::size_t stride = 1);

// order, frequency_hz, rms (input units), percent of fundamental, phase_rad.
std::string spectrum_csv(const HarmonicSpectrum& s);

// Whole-run record: echoed config, distortion and RMS figures, level counts,
// warnings. Mirrors the CSV columns field for field.
std::string summary_json(const PipelineResult& r);

std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string compare_csv(const std::vector<CompareRow>& rows);

// Comparison plus per-strategy acoustic predictions and the static
// lab-measured reference table (labeled, never computed here).
std::string compare_json(const std::vector<CompareRow>& rows, const MotorGeometry& geom);

std::string acoustic_csv(const AcousticPrediction& p);

void write_text_file(const std::string& path, const std::string& content);

} // namespace pwmlab
