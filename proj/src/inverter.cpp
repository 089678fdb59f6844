#include "pwmlab/inverter.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pwmlab/error.hpp"
#include "pwmlab/kernels.hpp"

namespace pwmlab {

namespace {

PulseTrain complement(const PulseTrain& t) {
    PulseTrain out = t;
    for (auto& v : out.values) v = static_cast<std::uint8_t>(1 - v);
    return out;
}

void check_train_grid(const PulseTrain& t, const PulseTrain& ref, const char* what) {
    if (t.sample_rate_hz != ref.sample_rate_hz || t.fundamental_hz != ref.fundamental_hz ||
        t.values.size() != ref.values.size())
        fail("inverter", std::string(what) + ": gate trains disagree on the grid");
}

} // namespace

void validate(const ChbTopology& topo) {
    if (topo.cells_per_phase < 1) fail("inverter", "need at least one cell per phase");
    if (!(topo.vdc_per_cell > 0.0)) fail("inverter", "cell DC link must be positive");
    if (topo.dead_time_s < 0.0) fail("inverter", "dead time cannot be negative");
}

PulseTrain compare_gate(const SampledWaveform& modulating, const SampledWaveform& carrier) {
    if (modulating.sample_rate_hz != carrier.sample_rate_hz ||
        modulating.fundamental_hz != carrier.fundamental_hz)
        fail("inverter", "modulating wave and carrier live on different grids");
    const std::size_t n = modulating.samples.size();
    const std::size_t cn = carrier.samples.size();
    if (n == 0 || cn == 0) fail("inverter", "empty waveform in comparison");
    if (n % cn != 0)
        fail("inverter", "carrier length does not divide the modulating record");

    PulseTrain out;
    out.sample_rate_hz = modulating.sample_rate_hz;
    out.fundamental_hz = modulating.fundamental_hz;
    out.values.resize(n);
    for (std::size_t off = 0; off < n; off += cn)
        kernels::compare_ge(modulating.samples.data() + off, carrier.samples.data(),
                            out.values.data() + off, cn, default_exec());
    return out;
}

std::size_t apply_dead_time(PulseTrain& train, double dead_time_s) {
    if (dead_time_s < 0.0) fail("inverter", "dead time cannot be negative");
    const auto d = static_cast<std::size_t>(std::llround(dead_time_s * train.sample_rate_hz));
    if (d == 0) return 0;
    const std::size_t n = train.values.size();
    if (d >= n) fail("inverter", "dead time spans the whole record");

    const std::size_t before = count_rising_edges(train);
    if (before == 0) return 0; // constant train, nothing to delay

    // Keep a sample on only where the command has been on for more than d
    // consecutive samples (circularly): that delays rising edges by d and
    // leaves falling edges alone.
    std::vector<std::size_t> run(n, 0);
    std::size_t start = 0;
    while (train.values[start] != 0) ++start; // a zero exists, edges > 0
    std::size_t streak = 0;
    for (std::size_t k = 0; k < 2 * n; ++k) {
        const std::size_t i = (start + k) % n;
        streak = train.values[i] ? streak + 1 : 0;
        run[i] = streak;
    }
    for (std::size_t i = 0; i < n; ++i)
        train.values[i] = static_cast<std::uint8_t>(run[i] > d ? 1 : 0);

    const std::size_t after = count_rising_edges(train);
    return before - after;
}

GateSchedule build_gates(const ModulatingSpec& mod, const CarrierSpec& carriers,
                         const ChbTopology& topo, std::size_t n_periods,
                         double sample_rate_hz) {
    validate(mod);
    validate(topo);
    if (carriers.cells != topo.cells_per_phase)
        fail("inverter", "carrier set and topology disagree on cells per phase");
    if (n_periods == 0) fail("inverter", "need at least one period");

    const double f = mod.fundamental_hz;
    const double period = 1.0 / f;

    GateSchedule s;
    s.sample_rate_hz = sample_rate_hz;
    s.fundamental_hz = f;
    s.cells = topo.cells_per_phase;

    for (int p = 0; p < 3; ++p) {
        ModulatingSpec mp = mod;
        mp.phase_rad = mod.phase_rad - 2.0 * std::numbers::pi * p / 3.0;
        const SampledWaveform ref_a = make_modulating(mp, n_periods, sample_rate_hz);
        // The second leg compares the half-period-shifted reference; with only
        // odd harmonics present that shift is an exact negation.
        SampledWaveform ref_b = ref_a;
        for (double& v : ref_b.samples) v = -v;

        const auto cell_carriers =
            gating_carriers(carriers, f, sample_rate_hz, p * period / 3.0);

        auto& cells = s.phases[static_cast<std::size_t>(p)];
        cells.resize(static_cast<std::size_t>(topo.cells_per_phase));
        for (int c = 0; c < topo.cells_per_phase; ++c) {
            CellGates& g = cells[static_cast<std::size_t>(c)];
            g.a_upper = compare_gate(ref_a, cell_carriers[static_cast<std::size_t>(c)]);
            g.b_upper = compare_gate(ref_b, cell_carriers[static_cast<std::size_t>(c)]);
            g.a_lower = complement(g.a_upper);
            g.b_lower = complement(g.b_upper);
            if (topo.dead_time_s > 0.0) {
                s.vanished_pulses += apply_dead_time(g.a_upper, topo.dead_time_s);
                s.vanished_pulses += apply_dead_time(g.a_lower, topo.dead_time_s);
                s.vanished_pulses += apply_dead_time(g.b_upper, topo.dead_time_s);
                s.vanished_pulses += apply_dead_time(g.b_lower, topo.dead_time_s);
            }
        }
    }
    return s;
}

SampledWaveform cell_voltage(const CellGates& gates, double vdc) {
    check_train_grid(gates.a_lower, gates.a_upper, "cell");
    check_train_grid(gates.b_upper, gates.a_upper, "cell");
    check_train_grid(gates.b_lower, gates.a_upper, "cell");
    const std::size_t n = gates.a_upper.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        if ((gates.a_upper.values[i] & gates.a_lower.values[i]) ||
            (gates.b_upper.values[i] & gates.b_lower.values[i]))
            fail("inverter", "shoot-through: upper and lower of one leg are both "
                             "commanded on at sample " + std::to_string(i));
    }
    SampledWaveform v;
    v.sample_rate_hz = gates.a_upper.sample_rate_hz;
    v.fundamental_hz = gates.a_upper.fundamental_hz;
    v.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        v.samples[i] = vdc * (static_cast<int>(gates.a_upper.values[i]) -
                              static_cast<int>(gates.b_upper.values[i]));
    return v;
}

PhaseLineVoltages phase_and_line_voltages(const GateSchedule& schedule,
                                          const ChbTopology& topo) {
    validate(topo);
    if (schedule.cells != topo.cells_per_phase)
        fail("inverter", "schedule and topology disagree on cells per phase");

    PhaseLineVoltages out;
    for (int p = 0; p < 3; ++p) {
        const auto& cells = schedule.phases[static_cast<std::size_t>(p)];
        if (static_cast<int>(cells.size()) != topo.cells_per_phase)
            fail("inverter", "schedule is missing cells for a phase");
        SampledWaveform sum;
        for (int c = 0; c < topo.cells_per_phase; ++c) {
            SampledWaveform v =
                cell_voltage(cells[static_cast<std::size_t>(c)], topo.vdc_per_cell);
            if (c == 0) {
                sum = std::move(v);
            } else {
                for (std::size_t i = 0; i < sum.samples.size(); ++i)
                    sum.samples[i] += v.samples[i];
            }
        }
        out.phase[static_cast<std::size_t>(p)] = std::move(sum);
    }
    for (int p = 0; p < 3; ++p) {
        const auto& a = out.phase[static_cast<std::size_t>(p)];
        const auto& b = out.phase[static_cast<std::size_t>((p + 1) % 3)];
        SampledWaveform line = a;
        for (std::size_t i = 0; i < line.samples.size(); ++i)
            line.samples[i] -= b.samples[i];
        out.line[static_cast<std::size_t>(p)] = std::move(line);
    }
    return out;
}

} // namespace pwmlab
