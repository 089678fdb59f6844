#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "pwmlab/carriers.hpp"
#include "pwmlab/modulating.hpp"
#include "pwmlab/waveform.hpp"

namespace pwmlab {

// Cascaded H-bridge string, identical cells, isolated equal DC links.
struct ChbTopology {
    int cells_per_phase = 2;
    double vdc_per_cell = 150.0;
    double dead_time_s = 0.0; // interlock delay on every turn-on command
};

void validate(const ChbTopology& topo);

// Switch commands of one H-bridge cell. Leg A carries the reference, leg B the
// half-period-shifted reference against the same carrier, so the cell output
// is unipolar three-level.
struct CellGates {
    PulseTrain a_upper, a_lower, b_upper, b_lower;
};

struct GateSchedule {
    double sample_rate_hz = 0.0;
    double fundamental_hz = 0.0;
    int cells = 0;
    std::array<std::vector<CellGates>, 3> phases; // [phase][cell]
    std::size_t vanished_pulses = 0; // pulses shorter than the dead time
};

// Natural-sampling comparator: gate is on where modulating >= carrier (ties
// on). The carrier may span fewer periods than the modulating wave; it is
// tiled. Grids must agree.
PulseTrain compare_gate(const SampledWaveform& modulating, const SampledWaveform& carrier);

// Full three-phase schedule. Phase p runs on a time base delayed by p*T/3:
// its modulating wave is shifted by -120deg*p and its carriers are built with
// the same time delay, so each phase is an exact time shift of phase 0.
// A nonzero dead time then delays every turn-on by that many samples.
GateSchedule build_gates(const ModulatingSpec& mod, const CarrierSpec& carriers,
                         const ChbTopology& topo, std::size_t n_periods,
                         double sample_rate_hz);

// vdc * (a_upper - b_upper), in {-vdc, 0, +vdc}. Upper and lower of the same
// leg both on is a shoot-through fault and fails hard. During an interlock gap
// the pole is treated as if the outgoing switch were still conducting, the
// usual approximation for current into the load.
SampledWaveform cell_voltage(const CellGates& gates, double vdc);

struct PhaseLineVoltages {
    std::array<SampledWaveform, 3> phase; // cell-sum of each string, to neutral
    std::array<SampledWaveform, 3> line;  // phase0-phase1, phase1-phase2, phase2-phase0
};

PhaseLineVoltages phase_and_line_voltages(const GateSchedule& schedule,
                                          const ChbTopology& topo);

// Delays every rising edge by the dead time, rounded to whole samples, keeping
// falling edges in place (the train is treated as circular). Pulses no longer
// than the delay vanish; returns how many did.
std::size_t apply_dead_time(PulseTrain& train, double dead_time_s);

} // namespace pwmlab
