// Command-line front end: synthesis, sweeps, strategy comparison and acoustic
// prediction, all driven by a JSON config and exporting CSV/JSON reports.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwmlab/acoustic.hpp"
#include "pwmlab/config.hpp"
#include "pwmlab/error.hpp"
#include "pwmlab/fmtct.hpp"
#include "pwmlab/kernels.hpp"
#include "pwmlab/pipeline.hpp"
#include "pwmlab/report.hpp"

namespace {

using namespace pwmlab;

std::string out_path(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::size_t> sampling;
    std::optional<std::size_t> periods;
    std::optional<double> dead_time_s;
    std::optional<double> target_rms;
    int harmonics = kThdOrders;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_config) {
    if (with_config)
        cmd->add_option("--config", o.config_path, "JSON config file (defaults apply when omitted)");
    cmd->add_option("--out-dir", o.out_dir, "directory for exported files");
    cmd->add_option("--sampling", o.sampling, "samples per fundamental period (power of two)");
    cmd->add_option("--periods", o.periods, "fundamental periods to synthesize");
    cmd->add_option("--dead-time", o.dead_time_s, "interlock dead time in seconds");
    cmd->add_option("--target-rms", o.target_rms, "line fundamental RMS target in volts");
    cmd->add_option("--harmonics", o.harmonics, "harmonic orders to export")
        ->check(CLI::PositiveNumber);
}

ModulationConfig resolve_config(const CommonOpts& o, Strategy fallback) {
    ModulationConfig c = o.config_path.empty() ? default_config(fallback)
                                               : load_config(o.config_path);
    if (o.sampling) c.sampling.samples_per_period = *o.sampling;
    if (o.periods) c.sampling.periods = *o.periods;
    if (o.dead_time_s) c.topology.dead_time_s = *o.dead_time_s;
    if (o.target_rms) c.target_fundamental_rms_v = *o.target_rms;
    validate(c);
    return c;
}

void geometry_opts(CLI::App* cmd, MotorGeometry& geom) {
    cmd->add_option("--pole-pairs", geom.pole_pairs, "motor pole pairs");
    cmd->add_option("--stator-slots", geom.stator_slots, "stator slot count");
    cmd->add_option("--rotor-slots", geom.rotor_slots, "rotor slot count");
    cmd->add_option("--slip", geom.slip, "per-unit slip");
}

int cmd_verify_table1(double m_bar, const std::vector<double>& ks,
                      const std::string& out) {
    std::ostringstream csv;
    csv << "k_trunc,a_m_closed,a_m_quadrature,rel_disagreement,t1_ms,"
           "a_m_times_one_minus_k,agreement\n";
    for (double k : ks) {
        const double closed = solve_am(k, m_bar);
        const double quad = solve_am_quadrature(k, m_bar);
        const double rel = std::abs(closed - quad) / closed;
        const FmtctParams p = make_fmtct_params(k, m_bar, 50.0);
        const double t1_ms = lobe_times(p).t1 * 1e3;
        csv << format_double(k) << ',' << format_double(closed) << ','
            << format_double(quad) << ',' << format_double(rel) << ','
            << format_double(t1_ms) << ',' << format_double(closed * (1.0 - k)) << ','
            << (rel <= 1e-6 ? "ok" : "DISAGREE") << '\n';
    }
    const std::string text = csv.str();
    std::cout << text;
    if (!out.empty()) write_text_file(out, text);
    return 0;
}

int cmd_synthesize(const CommonOpts& o, std::size_t stride) {
    const ModulationConfig c = resolve_config(o, Strategy::hipwm_fmtct);
    const PipelineResult r = run_pipeline(c, o.harmonics);
    write_text_file(out_path(o.out_dir, "waveform.csv"), waveform_csv(r, stride));
    write_text_file(out_path(o.out_dir, "spectrum_phase.csv"), spectrum_csv(r.phase_spectrum));
    write_text_file(out_path(o.out_dir, "spectrum_line.csv"), spectrum_csv(r.line_spectrum));
    write_text_file(out_path(o.out_dir, "summary.json"), summary_json(r));
    std::cout << "strategy=" << strategy_name(c.strategy)
              << " thd_line_n50_pct=" << format_double(100.0 * r.thd_line_n50)
              << " fundamental_rms_line_v=" << format_double(r.fundamental_rms_line_v)
              << " pulses_per_leg=" << r.pulse_count_per_leg << '\n';
    for (const std::string& w : r.warnings) std::cout << "warning: " << w << '\n';
    return 0;
}

int cmd_sweep_k(const CommonOpts& o, const std::vector<double>& ks, double m_bar) {
    ModulationConfig base = resolve_config(o, Strategy::hipwm_fmtct);
    if (base.strategy != Strategy::hipwm_fmtct)
        fail("cli", "sweep-k needs a HIPWM_FMTCT config");
    if (std::abs(m_bar - base.carrier.fmtct.m_bar) > 1e-9) {
        base.carrier.order_m = m_bar;
        base.carrier.fmtct =
            make_fmtct_params(base.carrier.fmtct.k_trunc, m_bar,
                              base.modulating.fundamental_hz);
    }
    const auto rows = sweep_k(base, ks);
    const std::string text = sweep_csv(rows);
    std::cout << text;
    write_text_file(out_path(o.out_dir, "sweep.csv"), text);
    return 0;
}

int cmd_compare(const CommonOpts& o, const std::vector<std::string>& names,
                double k_trunc, const MotorGeometry& geom) {
    std::vector<ModulationConfig> configs;
    for (const std::string& name : names) {
        CommonOpts per = o;
        per.config_path.clear(); // strategies come from defaults here
        ModulationConfig c = resolve_config(per, strategy_from_name(name));
        c.strategy = strategy_from_name(name);
        ModulationConfig base = default_config(c.strategy);
        c.modulating.injection = base.modulating.injection;
        c.carrier = base.carrier;
        if (c.strategy == Strategy::hipwm_fmtct) {
            c.carrier.fmtct = make_fmtct_params(k_trunc, c.carrier.fmtct.m_bar,
                                                c.modulating.fundamental_hz);
        }
        validate(c);
        configs.push_back(std::move(c));
    }
    const auto rows = compare_strategies(configs, geom);
    const std::string text = compare_csv(rows);
    std::cout << text;
    write_text_file(out_path(o.out_dir, "compare.csv"), text);
    write_text_file(out_path(o.out_dir, "compare.json"), compare_json(rows, geom));
    for (const CompareRow& row : rows) {
        if (!row.error.empty()) continue;
        std::string name = row.label;
        for (char& ch : name)
            if (ch == ' ' || ch == '=' || ch == '.') ch = '_';
        write_text_file(out_path(o.out_dir, "acoustic_" + name + ".csv"),
                        acoustic_csv(row.acoustics));
    }
    return 0;
}

int cmd_predict(const CommonOpts& o, const MotorGeometry& geom, bool sine_fed,
                int k_max, int order_max, double threshold) {
    AcousticPrediction pred;
    if (sine_fed) {
        pred = predict(geom, HarmonicSpectrum{}, 50.0, 0.0, k_max, order_max, threshold);
    } else {
        const ModulationConfig c = resolve_config(o, Strategy::hipwm_fmtct);
        const PipelineResult r = run_pipeline(c, o.harmonics);
        pred = predict(geom, r.line_spectrum, c.modulating.fundamental_hz,
                       switching_frequency_hz(c), k_max, order_max, threshold);
    }
    const std::string text = acoustic_csv(pred);
    std::cout << text;
    write_text_file(out_path(o.out_dir, "acoustics.csv"), text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilevel PWM waveform laboratory"};
    app.require_subcommand(1);
    bool serial = false;
    app.add_flag("--serial", serial, "run the data-parallel kernels serially");

    auto* t1 = app.add_subcommand("verify-table1",
                                  "carrier-law solver against its quadrature oracle");
    double m_bar = 15.0;
    std::vector<double> t1_ks{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    std::string t1_out;
    t1->add_option("--m-bar", m_bar, "mean switching order");
    t1->add_option("--k", t1_ks, "truncation levels to tabulate");
    t1->add_option("--out", t1_out, "also write the table to this CSV file");

    CommonOpts syn_opts;
    std::size_t stride = 64;
    auto* syn = app.add_subcommand("synthesize",
                                   "run one config and export waveform + spectra");
    add_common(syn, syn_opts, true);
    syn->add_option("--stride", stride, "keep every n-th waveform sample")
        ->check(CLI::PositiveNumber);

    CommonOpts sweep_opts;
    std::vector<double> sweep_ks{0.3, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8};
    double sweep_m_bar = 15.0;
    auto* swp = app.add_subcommand("sweep-k", "pipeline across truncation levels");
    add_common(swp, sweep_opts, true);
    swp->add_option("--k", sweep_ks, "truncation levels");
    swp->add_option("--m-bar", sweep_m_bar, "mean switching order");

    CommonOpts cmp_opts;
    std::vector<std::string> cmp_names{"SPWM1", "SPWM2", "SPWM3", "HIPWM_FMTCT"};
    double cmp_k = 0.45;
    auto* cmp = app.add_subcommand("compare",
                                   "strategies side by side at equal fundamental RMS");
    add_common(cmp, cmp_opts, false);
    cmp->add_option("--strategies", cmp_names, "strategies to compare");
    cmp->add_option("--k-trunc", cmp_k, "truncation level of the HIPWM_FMTCT entry");
    MotorGeometry cmp_geom;
    geometry_opts(cmp, cmp_geom);
    cmp_opts.target_rms = 220.0; // the comparison criterion; --target-rms overrides

    CommonOpts prd_opts;
    bool sine_fed = false;
    int k_max = 5, order_max = 4;
    double threshold = 0.01;
    auto* prd = app.add_subcommand("predict-acoustics",
                                   "noise-line prediction for a config or a sine-fed motor");
    add_common(prd, prd_opts, true);
    prd->add_flag("--sine", sine_fed, "balanced sine supply, no inverter");
    prd->add_option("--k-max", k_max, "slot-harmonic depth");
    prd->add_option("--order-max", order_max, "sideband order depth");
    prd->add_option("--threshold", threshold, "temporal-map relative threshold");
    MotorGeometry prd_geom;
    geometry_opts(prd, prd_geom);

    CLI11_PARSE(app, argc, argv);

    try {
        set_default_exec(serial ? Exec::serial : Exec::parallel);
        if (t1->parsed()) return cmd_verify_table1(m_bar, t1_ks, t1_out);
        if (syn->parsed()) return cmd_synthesize(syn_opts, stride);
        if (swp->parsed()) return cmd_sweep_k(sweep_opts, sweep_ks, sweep_m_bar);
        if (cmp->parsed()) return cmd_compare(cmp_opts, cmp_names, cmp_k, cmp_geom);
        if (prd->parsed())
            return cmd_predict(prd_opts, prd_geom, sine_fed, k_max, order_max, threshold);
    } catch (const Error& e) {
        nlohmann::json err{{"error", e.what()}, {"module", e.module()}};
        std::cerr << err.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", e.what()}, {"module", "unknown"}};
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return 0;
}
