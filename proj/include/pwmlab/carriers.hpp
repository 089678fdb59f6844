#pragma once

#include <string>
#include <vector>

#include "pwmlab/fmtct.hpp"
#include "pwmlab/waveform.hpp"

namespace pwmlab {

// Carrier arrangements for a cascaded bridge with `cells` H-bridges per phase.
struct CarrierSpec {
    enum class Kind {
        fixed_triangle,    // one full-range triangle at order_m * fundamental
        level_shifted_set, // 2*cells stacked bands covering [-1, 1], all in phase
        phase_shifted_set, // cells full-range triangles offset by 180deg/cells
        fm_truncated,      // frequency-modulated truncated carrier per cell
    };

    Kind kind = Kind::phase_shifted_set;
    int cells = 2;
    double order_m = 15.0; // carrier order M for the fixed-frequency kinds
    FmtctParams fmtct;     // only read when kind == fm_truncated
    // Optional override of the phase-shifted offsets; must be multiples of
    // 180deg/cells.
    std::vector<double> phase_offsets_deg;
};

// Non-fatal consistency findings (even carrier order, order not a multiple of
// three, non-integer order). Symmetry degrades but synthesis still works.
std::vector<std::string> carrier_warnings(const CarrierSpec& spec);

// The full carrier set for the three fixed-frequency arrangements.
// time_delay_s shifts every carrier's time base (three-phase builds delay each
// phase by T/3). Rejects the FM kind: that one is produced per cell by
// make_fmtct_carrier.
std::vector<SampledWaveform> make_reference_carriers(const CarrierSpec& spec,
                                                     double fundamental_hz,
                                                     double sample_rate_hz,
                                                     double time_delay_s = 0.0);

// Exactly one gating carrier per cell, for any kind. Level-shifted cells gate
// against their positive band; the mirrored negative band is implied by the
// half-period-shifted comparison the bridge's second leg performs.
std::vector<SampledWaveform> gating_carriers(const CarrierSpec& spec,
                                             double fundamental_hz,
                                             double sample_rate_hz,
                                             double time_delay_s = 0.0);

} // namespace pwmlab
