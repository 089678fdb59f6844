#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "pwmlab/carriers.hpp"
#include "pwmlab/inverter.hpp"
#include "pwmlab/modulating.hpp"

namespace pwmlab {

enum class Strategy { spwm1, spwm2, spwm3, hipwm_fmtct };

// Config-file spellings: SPWM1, SPWM2, SPWM3, HIPWM_FMTCT.
const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct SamplingSpec {
    std::size_t samples_per_period = std::size_t{1} << 18;
    std::size_t periods = 1;
};

// One complete experiment: which strategy, the reference wave, the carrier
// arrangement, the bridge, and the sampling grid.
struct ModulationConfig {
    Strategy strategy = Strategy::hipwm_fmtct;
    ModulatingSpec modulating;
    CarrierSpec carrier;
    ChbTopology topology;
    SamplingSpec sampling;
    // When set, the amplitude index is searched so the line-voltage
    // fundamental RMS hits this value before analysis.
    std::optional<double> target_fundamental_rms_v;

    double sample_rate_hz() const;
};

// Paper-style defaults: 50 Hz, Ma = 0.9, two cells of 150 V, M = 15,
// injection (3, 1/6) for the strategies that use it, 2^18 samples/period.
ModulationConfig default_config(Strategy s);

// Cross-field rules: strategy fixes the carrier kind, injection must be
// present for SPWM3 and HIPWM_FMTCT, cells agree between carrier and
// topology, sampling is a power of two.
void validate(const ModulationConfig& c);

// Average switching frequency seen by one leg (order * fundamental).
double switching_frequency_hz(const ModulationConfig& c);

// JSON round trip. Parsing starts from default_config of the named strategy
// and overlays the present fields; unknown keys are rejected.
ModulationConfig parse_config_text(const std::string& text);
ModulationConfig load_config(const std::string& path);
std::string config_text(const ModulationConfig& c);
void save_config(const ModulationConfig& c, const std::string& path);

} // namespace pwmlab
