#include "pwmlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pwmlab/error.hpp"
#include "pwmlab/fmtct.hpp"

namespace pwmlab {

namespace {

struct Synthesis {
    GateSchedule schedule;
    PhaseLineVoltages voltages;
};

Synthesis synthesize(const ModulationConfig& c, std::size_t periods) {
    Synthesis s;
    s.schedule = build_gates(c.modulating, c.carrier, c.topology, periods,
                             c.sample_rate_hz());
    s.voltages = phase_and_line_voltages(s.schedule, c.topology);
    return s;
}

double line_fundamental_rms(const ModulationConfig& c) {
    const Synthesis s = synthesize(c, 1);
    return spectrum(s.voltages.line[0], 1).bins[0].rms;
}

HarmonicSpectrum truncated(const HarmonicSpectrum& s, int orders) {
    HarmonicSpectrum t = s;
    if (static_cast<int>(t.bins.size()) > orders)
        t.bins.resize(static_cast<std::size_t>(orders));
    return t;
}

} // namespace

NormalizationResult normalize_fundamental(const ModulationConfig& c, double target_rms_v) {
    validate(c);
    if (!(target_rms_v > 0.0))
        fail("pipeline", "target fundamental RMS must be positive");

    const double rel_tol = 2e-4; // comfortably inside the 0.1% acceptance band
    auto eval = [&](double ma) {
        ModulationConfig probe = c;
        probe.modulating.amplitude_index = ma;
        probe.target_fundamental_rms_v.reset();
        return line_fundamental_rms(probe);
    };

    double lo = 1e-6, hi = 1.2;
    double flo = eval(lo), fhi = eval(hi);
    int evals = 2;
    if (fhi < target_rms_v * (1.0 - rel_tol))
        fail("pipeline", "target " + std::to_string(target_rms_v) +
                             " V is unreachable; the maximum achievable line "
                             "fundamental is " + std::to_string(fhi) + " V");
    if (flo > target_rms_v * (1.0 + rel_tol))
        fail("pipeline", "target " + std::to_string(target_rms_v) +
                             " V is unreachable; the minimum achievable line "
                             "fundamental is " + std::to_string(flo) + " V");

    // The response is monotone in the amplitude index but stepped at sample
    // resolution, so bisect with a secant probe and stop on the residual.
    double best_ma = hi, best_rms = fhi;
    if (std::abs(flo - target_rms_v) < std::abs(best_rms - target_rms_v)) {
        best_ma = lo;
        best_rms = flo;
    }
    for (int it = 0; it < 80 && hi - lo > 1e-9; ++it) {
        double mid;
        if (fhi - flo > 1e-12) {
            mid = lo + (target_rms_v - flo) * (hi - lo) / (fhi - flo);
            const double margin = 0.05 * (hi - lo);
            mid = std::clamp(mid, lo + margin, hi - margin);
        } else {
            mid = 0.5 * (lo + hi);
        }
        const double fm = eval(mid);
        ++evals;
        if (std::abs(fm - target_rms_v) < std::abs(best_rms - target_rms_v)) {
            best_ma = mid;
            best_rms = fm;
        }
        if (std::abs(fm - target_rms_v) <= rel_tol * target_rms_v) break;
        if (fm < target_rms_v) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    if (std::abs(best_rms - target_rms_v) > 1e-3 * target_rms_v)
        fail("pipeline", "normalization stalled at " + std::to_string(best_rms) +
                             " V for a target of " + std::to_string(target_rms_v) + " V");

    NormalizationResult r;
    r.config = c;
    r.config.modulating.amplitude_index = best_ma;
    r.achieved_rms_v = best_rms;
    r.evaluations = evals;
    return r;
}

PipelineResult run_pipeline(const ModulationConfig& c, int export_orders) {
    validate(c);
    if (export_orders < 1) fail("pipeline", "need at least one exported order");

    PipelineResult r;
    r.config = c;
    if (c.target_fundamental_rms_v) {
        NormalizationResult n = normalize_fundamental(c, *c.target_fundamental_rms_v);
        r.config.modulating.amplitude_index = n.config.modulating.amplitude_index;
    }
    r.export_orders = export_orders;
    r.warnings = carrier_warnings(c.carrier);

    // Overmodulation is legal but worth flagging: the comparator saturates and
    // the fundamental no longer tracks the amplitude index linearly.
    double peak = 0.0;
    const double period = 1.0 / r.config.modulating.fundamental_hz;
    for (int i = 0; i < 4096; ++i)
        peak = std::max(peak, std::abs(modulating_value(r.config.modulating,
                                                        period * i / 4096.0)));
    if (peak > 1.0)
        r.warnings.push_back("overmodulation: reference peak " + std::to_string(peak) +
                             " exceeds the carrier range");

    Synthesis s = synthesize(r.config, r.config.sampling.periods);
    r.vanished_pulses = s.schedule.vanished_pulses;
    if (r.vanished_pulses > 0)
        r.warnings.push_back(std::to_string(r.vanished_pulses) +
                             " pulses were shorter than the dead time and vanished");

    const std::size_t periods = r.config.sampling.periods;
    r.pulse_count_per_leg =
        count_rising_edges(s.schedule.phases[0][0].a_upper) / periods;

    const auto spp = static_cast<int>(r.config.sampling.samples_per_period);
    const int nyquist = spp / 2;
    const HarmonicSpectrum full_line = spectrum(s.voltages.line[0], nyquist);
    const HarmonicSpectrum full_phase =
        spectrum(s.voltages.phase[0], std::max(export_orders, kThdOrders));

    r.thd_line_n50 = thd(full_line, kThdOrders);
    r.thd_phase_n50 = thd(full_phase, kThdOrders);
    r.thd_line_nyquist = thd(full_line, nyquist);
    r.fundamental_rms_line_v = full_line.bins[0].rms;
    r.fundamental_rms_phase_v = full_phase.bins[0].rms;
    r.total_rms_line_v = total_rms(s.voltages.line[0]);
    r.total_rms_phase_v = total_rms(s.voltages.phase[0]);
    r.line_spectrum = truncated(full_line, export_orders);
    r.phase_spectrum = truncated(full_phase, export_orders);
    r.schedule = std::move(s.schedule);
    r.voltages = std::move(s.voltages);
    return r;
}

std::vector<SweepRow> sweep_k(const ModulationConfig& base,
                              const std::vector<double>& k_list) {
    if (base.strategy != Strategy::hipwm_fmtct)
        fail("pipeline", "the truncation sweep only applies to HIPWM_FMTCT");
    validate(base);

    std::vector<SweepRow> rows;
    rows.reserve(k_list.size());
    for (double k : k_list) {
        SweepRow row;
        row.k_trunc = k;
        try {
            ModulationConfig c = base;
            c.carrier.fmtct = make_fmtct_params(k, base.carrier.fmtct.m_bar,
                                                base.modulating.fundamental_hz);
            row.a_m = c.carrier.fmtct.a_m;
            row.t1_ms = lobe_times(c.carrier.fmtct).t1 * 1e3;
            const PipelineResult r = run_pipeline(c);
            row.amplitude_index = r.config.modulating.amplitude_index;
            row.thd_line_n50 = r.thd_line_n50;
            row.fundamental_rms_line_v = r.fundamental_rms_line_v;
            row.total_rms_line_v = r.total_rms_line_v;
            row.pulse_count = r.pulse_count_per_leg;
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<CompareRow> compare_strategies(const std::vector<ModulationConfig>& configs,
                                           const MotorGeometry& geom) {
    validate(geom);
    std::vector<CompareRow> rows;
    rows.reserve(configs.size());
    for (const ModulationConfig& c : configs) {
        CompareRow row;
        row.label = strategy_name(c.strategy);
        if (c.strategy == Strategy::hipwm_fmtct)
            row.label += " K=" + std::to_string(c.carrier.fmtct.k_trunc).substr(0, 4);
        row.config = c;
        try {
            const PipelineResult r = run_pipeline(c);
            row.config = r.config;
            row.thd_line_n50 = r.thd_line_n50;
            row.thd_phase_n50 = r.thd_phase_n50;
            row.fundamental_rms_line_v = r.fundamental_rms_line_v;
            row.total_rms_line_v = r.total_rms_line_v;
            row.total_rms_phase_v = r.total_rms_phase_v;
            row.pulse_count = r.pulse_count_per_leg;
            row.acoustics = predict(geom, r.line_spectrum, c.modulating.fundamental_hz,
                                    switching_frequency_hz(c));
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace pwmlab
