#include "pwmlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pwmlab/error.hpp"
#include "pwmlab/fmtct.hpp"

namespace pwmlab {

namespace {

using nlohmann::json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

// Static echo of the published bench measurements the model is compared
// against. These numbers come from a physical rig; nothing here computes them.
json lab_reference_not_simulated() {
    json rows = json::array();
    auto row = [&](const char* label, double noise_dba, double thd_pct, double vrms) {
        json r;
        r["supply"] = label;
        r["noise_dba_220v"] = noise_dba;
        r["thd_voltage_pct_220v"] = thd_pct;
        if (vrms > 0.0) r["v_rms_dclink_75v"] = vrms;
        rows.push_back(r);
    };
    row("grid", 49.6, 0.0, -1.0);
    row("SPWM1", 59.4, 15.0, 187.0);
    row("SPWM2", 55.7, 4.5, 190.0);
    row("SPWM3", 53.5, 5.7, 226.0);
    row("HIPWM_FMTCT K=0.30", 56.3, 8.5, 220.0);
    row("HIPWM_FMTCT K=0.40", 54.9, 7.0, 223.0);
    row("HIPWM_FMTCT K=0.45", 53.8, 4.0, 226.0);
    row("HIPWM_FMTCT K=0.50", 52.9, 4.2, 231.0);
    row("HIPWM_FMTCT K=0.55", 52.3, 4.5, 229.0);
    row("HIPWM_FMTCT K=0.60", 52.3, 5.0, 228.0);
    row("HIPWM_FMTCT K=0.65", 52.1, 5.2, 230.0);
    row("HIPWM_FMTCT K=0.70", 52.0, 5.5, 230.0);
    row("HIPWM_FMTCT K=0.75", 52.7, 6.8, 231.0);
    row("HIPWM_FMTCT K=0.80", 53.0, 7.4, 231.0);
    return rows;
}

json config_json(const ModulationConfig& c) { return json::parse(config_text(c)); }

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string waveform_csv(const PipelineResult& r, std::size_t stride) {
    if (stride == 0) fail("report", "stride must be positive");
    const auto& v = r.voltages;
    std::ostringstream out;
    out << "t_s,phase0_v,phase1_v,phase2_v,line01_v,line12_v,line20_v\n";
    const std::size_t n = v.phase[0].samples.size();
    const double dt = v.phase[0].dt();
    for (std::size_t i = 0; i < n; i += stride) {
        out << format_double(static_cast<double>(i) * dt);
        for (int p = 0; p < 3; ++p)
            out << ',' << format_double(v.phase[static_cast<std::size_t>(p)].samples[i]);
        for (int p = 0; p < 3; ++p)
            out << ',' << format_double(v.line[static_cast<std::size_t>(p)].samples[i]);
        out << '\n';
    }
    return out.str();
}

std::string spectrum_csv(const HarmonicSpectrum& s) {
    std::ostringstream out;
    out << "order,frequency_hz,rms,pct_of_fundamental,phase_rad\n";
    const double fund = s.bins.empty() ? 0.0 : s.bins[0].rms;
    for (const HarmonicBin& b : s.bins) {
        const double pct = fund > 0.0 ? 100.0 * b.rms / fund : 0.0;
        out << b.order << ',' << format_double(b.order * s.fundamental_hz) << ','
            << format_double(b.rms) << ',' << format_double(pct) << ','
            << format_double(b.phase_rad) << '\n';
    }
    return out.str();
}

std::string summary_json(const PipelineResult& r) {
    json j;
    j["config"] = config_json(r.config);
    j["thd_line_n50"] = r.thd_line_n50;
    j["thd_phase_n50"] = r.thd_phase_n50;
    j["thd_line_nyquist"] = r.thd_line_nyquist;
    j["fundamental_rms_line_v"] = r.fundamental_rms_line_v;
    j["fundamental_rms_phase_v"] = r.fundamental_rms_phase_v;
    j["total_rms_line_v"] = r.total_rms_line_v;
    j["total_rms_phase_v"] = r.total_rms_phase_v;
    j["pulse_count_per_leg"] = r.pulse_count_per_leg;
    j["vanished_pulses"] = r.vanished_pulses;
    j["distinct_phase_levels"] = distinct_levels(r.voltages.phase[0]).size();
    j["distinct_line_levels"] = distinct_levels(r.voltages.line[0]).size();
    if (r.config.strategy == Strategy::hipwm_fmtct) {
        const LobeTimes lt = lobe_times(r.config.carrier.fmtct);
        j["a_m"] = r.config.carrier.fmtct.a_m;
        j["t1_ms"] = lt.t1 * 1e3;
        j["t2_ms"] = lt.t2 * 1e3;
        j["t3_ms"] = lt.t3 * 1e3;
        j["t4_ms"] = lt.t4 * 1e3;
    }
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "k_trunc,a_m,t1_ms,amplitude_index,thd_line_pct,"
           "fundamental_rms_line_v,total_rms_line_v,pulse_count,error\n";
    for (const SweepRow& r : rows) {
        out << format_double(r.k_trunc) << ',' << format_double(r.a_m) << ','
            << format_double(r.t1_ms) << ',' << format_double(r.amplitude_index) << ','
            << format_double(100.0 * r.thd_line_n50) << ','
            << format_double(r.fundamental_rms_line_v) << ','
            << format_double(r.total_rms_line_v) << ',' << r.pulse_count << ','
            << csv_field(r.error) << '\n';
    }
    return out.str();
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out << "label,strategy,k_trunc,amplitude_index,thd_line_pct,thd_phase_pct,"
           "fundamental_rms_line_v,total_rms_line_v,total_rms_phase_v,pulse_count,error\n";
    for (const CompareRow& r : rows) {
        out << csv_field(r.label) << ',' << strategy_name(r.config.strategy) << ',';
        if (r.config.strategy == Strategy::hipwm_fmtct)
            out << format_double(r.config.carrier.fmtct.k_trunc);
        out << ',' << format_double(r.config.modulating.amplitude_index) << ','
            << format_double(100.0 * r.thd_line_n50) << ','
            << format_double(100.0 * r.thd_phase_n50) << ','
            << format_double(r.fundamental_rms_line_v) << ','
            << format_double(r.total_rms_line_v) << ','
            << format_double(r.total_rms_phase_v) << ',' << r.pulse_count << ','
            << csv_field(r.error) << '\n';
    }
    return out.str();
}

namespace {

json line_json(const AcousticLine& l) {
    json j;
    j["frequency_hz"] = l.frequency_hz;
    j["mechanism"] = mechanism_name(l.mechanism);
    if (l.k_index) j["k"] = l.k_index;
    if (l.mechanism == Mechanism::switching_sideband) {
        j["a"] = l.sideband_a;
        j["b"] = l.sideband_b;
    }
    if (l.has_mode) j["mode_r"] = l.vibration_mode_r;
    j["amplitude_proxy"] = l.amplitude_proxy;
    if (l.electrical_hz > 0.0) j["electrical_hz"] = l.electrical_hz;
    return j;
}

} // namespace

std::string compare_json(const std::vector<CompareRow>& rows, const MotorGeometry& geom) {
    json j;
    json g;
    g["pole_pairs"] = geom.pole_pairs;
    g["stator_slots"] = geom.stator_slots;
    g["rotor_slots"] = geom.rotor_slots;
    g["stator_phases"] = geom.stator_phases;
    g["slip"] = geom.slip;
    j["motor"] = g;
    json out_rows = json::array();
    for (const CompareRow& r : rows) {
        json row;
        row["label"] = r.label;
        row["config"] = config_json(r.config);
        if (!r.error.empty()) {
            row["error"] = r.error;
            out_rows.push_back(row);
            continue;
        }
        row["thd_line_n50"] = r.thd_line_n50;
        row["thd_phase_n50"] = r.thd_phase_n50;
        row["fundamental_rms_line_v"] = r.fundamental_rms_line_v;
        row["total_rms_line_v"] = r.total_rms_line_v;
        row["total_rms_phase_v"] = r.total_rms_phase_v;
        row["pulse_count_per_leg"] = r.pulse_count;
        json lines = json::array();
        for (const PredictedLine& pl : r.acoustics.lines) {
            json merged;
            merged["frequency_hz"] = pl.frequency_hz;
            json sources = json::array();
            for (const AcousticLine& l : pl.sources) sources.push_back(line_json(l));
            merged["sources"] = sources;
            lines.push_back(merged);
        }
        row["acoustic_lines"] = lines;
        out_rows.push_back(row);
    }
    j["rows"] = out_rows;
    j["lab_reference_not_simulated"] = lab_reference_not_simulated();
    return j.dump(2) + "\n";
}

std::string acoustic_csv(const AcousticPrediction& p) {
    std::ostringstream out;
    out << "line_hz,source_hz,mechanism,k,a,b,mode_r,amplitude_proxy,electrical_hz\n";
    for (const PredictedLine& pl : p.lines) {
        for (const AcousticLine& l : pl.sources) {
            out << format_double(pl.frequency_hz) << ',' << format_double(l.frequency_hz)
                << ',' << mechanism_name(l.mechanism) << ',' << l.k_index << ','
                << l.sideband_a << ',' << l.sideband_b << ',';
            if (l.has_mode) out << l.vibration_mode_r;
            out << ',' << format_double(l.amplitude_proxy) << ','
                << format_double(l.electrical_hz) << '\n';
        }
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("report", "cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail("report", "write failed for '" + path + "'");
}

} // namespace pwmlab
