// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// fails. Criterion 8 drives the CLI binary whose path arrives as argv[1].
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pwmlab/acoustic.hpp"
#include "pwmlab/config.hpp"
#include "pwmlab/fmtct.hpp"
#include "pwmlab/inverter.hpp"
#include "pwmlab/pipeline.hpp"
#include "pwmlab/spectrum.hpp"
#include "pwmlab/waveform.hpp"

#include "helpers.hpp"

namespace {

using namespace pwmlab;
using testutil::kPi;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// Collects every failed condition of one criterion; the criterion keeps
// running so the line reports all of them at once.
struct Check {
    bool ok = true;
    std::string why;

    void expect(bool cond, const std::string& msg) {
        if (cond) return;
        ok = false;
        if (!why.empty()) why += "; ";
        why += msg;
    }
};

// 1. Calibration table of the frequency law: closed form vs frozen values and
//    vs the quadrature oracle, lobe edge t1 included. Must finish in < 1 s.
void criterion_1(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Row {
        double k, a_m, t1_ms;
    };
    const Row rows[] = {
        {0.2, 44.277, 3.524}, {0.3, 55.134, 3.155},  {0.4, 70.638, 2.820},
        {0.5, 30.0 * kPi, 2.500}, {0.6, 133.513, 2.180}, {0.7, 208.142, 1.845},
        {0.8, 386.859, 1.476},
    };
    for (const Row& r : rows) {
        const double closed = solve_am(r.k, 15.0);
        const double quad = solve_am_quadrature(r.k, 15.0);
        c.expect(std::abs(closed - r.a_m) <= 0.01,
                 "A_M(K=" + fmt(r.k) + ")=" + fmt(closed) + " expected " + fmt(r.a_m));
        c.expect(std::abs(closed - quad) <= 1e-9 * closed,
                 "closed vs quadrature at K=" + fmt(r.k) + ": " + fmt(closed) + " vs " + fmt(quad));
        const FmtctParams p = make_fmtct_params(r.k, 15.0, 50.0);
        const double t1_ms = lobe_times(p).t1 * 1e3;
        c.expect(std::abs(t1_ms - r.t1_ms) <= 1e-3,
                 "t1(K=" + fmt(r.k) + ")=" + fmt(t1_ms) + " ms expected " + fmt(r.t1_ms));
    }
    const double took = seconds_since(t0);
    c.expect(took < 1.0, "took " + fmt(took) + " s");
}

// 2. Slot-harmonic families of the reference motor (p=2, 36/26 slots, no
//    slip): the interaction family 550..3350 Hz exactly and the rotor family
//    1200, 1400, 2500, 2700, ... for k up to 5. Must finish in < 1 s.
void criterion_2(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const MotorGeometry geom; // defaults are the reference machine
    const auto lines = spatial_harmonics(geom, 50.0, 5);
    std::multiset<double> interaction, rotor;
    for (const AcousticLine& l : lines) {
        if (l.mechanism == Mechanism::stator_rotor_interaction)
            interaction.insert(l.frequency_hz);
        if (l.mechanism == Mechanism::rotor_spatial) rotor.insert(l.frequency_hz);
    }
    const double want_interaction[] = {550,  650,  750,  1200, 1300, 1400, 1850, 1950,
                                       2050, 2500, 2600, 2700, 3150, 3250, 3350};
    for (double v : want_interaction)
        c.expect(interaction.count(v) == 1, "interaction family misses " + fmt(v) + " Hz");
    c.expect(interaction.size() == 15,
             "interaction family has " + std::to_string(interaction.size()) + " lines");
    const double want_rotor[] = {1200, 1400, 2500, 2700, 3800,
                                 4000, 5100, 5300, 6400, 6600};
    for (double v : want_rotor)
        c.expect(rotor.count(v) == 1, "rotor family misses " + fmt(v) + " Hz");
    c.expect(rotor.size() == 10, "rotor family has " + std::to_string(rotor.size()) + " lines");
    const double took = seconds_since(t0);
    c.expect(took < 1.0, "took " + fmt(took) + " s");
}

// 3. Sideband catalog at f_sw=750, f=50, orders to 4: the mixed-parity
//    electrical lines are present (the 2450 Hz a=3, b=4 line included) and no
//    same-parity pair contributes anywhere.
void criterion_3(Check& c) {
    const auto cat = switching_sidebands(750.0, 50.0, 4);
    auto has_electrical = [&](double v) {
        for (const AcousticLine& l : cat)
            if (std::abs(l.electrical_hz - v) < 1e-9) return true;
        return false;
    };
    const double required[] = {650, 850, 550, 950, 1450, 1550, 1350, 1650, 2450};
    for (double v : required)
        c.expect(has_electrical(v), "electrical line " + fmt(v) + " Hz missing");
    bool worked_example = false;
    for (const AcousticLine& l : cat)
        worked_example |= l.sideband_a == 3 && l.sideband_b == 4 &&
                          std::abs(l.electrical_hz - 2450.0) < 1e-9;
    c.expect(worked_example, "a=3, b=4 line at 2450 Hz missing");
    for (const AcousticLine& l : cat)
        c.expect((l.sideband_a + l.sideband_b) % 2 == 1,
                 "same-parity pair a=" + std::to_string(l.sideband_a) +
                     " b=" + std::to_string(l.sideband_b) + " present");
    // lines only a same-parity pair could produce must be absent
    const double excluded[] = {700, 800, 600, 900, 1400, 1600, 1300, 1700};
    for (double v : excluded)
        c.expect(!has_electrical(v), "same-parity electrical line " + fmt(v) + " Hz present");
}

// 4. Carrier structure at K=0.5: exactly 15 triangles per period, frozen on
//    (2.5, 7.5) ms and (12.5, 17.5) ms, and the two-cell line voltage keeps
//    at most 9 distinct levels.
void criterion_4(Check& c) {
    const std::size_t spp = std::size_t{1} << 16;
    const FmtctParams p = make_fmtct_params(0.5, 15.0, 50.0);
    const SampledWaveform carrier = make_fmtct_carrier(p, 50.0 * double(spp));
    SampledWaveform zeros = carrier;
    std::fill(zeros.samples.begin(), zeros.samples.end(), 0.0);
    const std::size_t triangles = count_rising_edges(compare_gate(zeros, carrier));
    c.expect(triangles == 15, "carrier completes " + std::to_string(triangles) + " triangles");
    auto frozen = [&](std::size_t lo, std::size_t hi, const char* name) {
        const double held = carrier.samples[lo];
        for (std::size_t j = lo; j <= hi; ++j)
            if (carrier.samples[j] != held) {
                c.expect(false, std::string(name) + " moves at sample " + std::to_string(j));
                return;
            }
    };
    frozen(spp / 8 + 2, 3 * spp / 8 - 2, "first blocked window");
    frozen(5 * spp / 8 + 2, 7 * spp / 8 - 2, "second blocked window");

    ModulationConfig mc = default_config(Strategy::hipwm_fmtct);
    mc.carrier.fmtct = make_fmtct_params(0.5, mc.carrier.fmtct.m_bar,
                                         mc.modulating.fundamental_hz);
    mc.sampling.samples_per_period = spp;
    const PipelineResult r = run_pipeline(mc);
    const std::size_t levels = distinct_levels(r.voltages.line[0]).size();
    c.expect(levels <= 9, "line voltage has " + std::to_string(levels) + " levels");
}

// 5. Spectral accuracy: clean sine, square wave against its direct partial
//    sum, Parseval on a synthesized line voltage, and triplen suppression in
//    the line spectrum.
void criterion_5(Check& c) {
    {
        // The single-bin recurrence accumulates roundoff with record length;
        // 2^14 keeps its floor two orders below the bound.
        const std::size_t spp = std::size_t{1} << 14;
        const auto sine = testutil::make_wave(
            50.0, spp, 1, [](double u) { return std::sin(2.0 * kPi * u); });
        const double t = thd(spectrum(sine, 50), 50);
        c.expect(t <= 1e-9, "sine distortion " + fmt(t));
    }
    {
        const std::size_t spp = std::size_t{1} << 17;
        const auto square = testutil::make_wave(50.0, spp, 1, [](double u) {
            return u - std::floor(u) < 0.5 ? 1.0 : -1.0;
        });
        double sum = 0.0;
        for (int n = 3; n <= 49; n += 2) sum += 1.0 / (double(n) * double(n));
        const double oracle = std::sqrt(sum);
        const double t = thd(spectrum(square, 49), 49);
        c.expect(std::abs(t - oracle) <= 1e-6,
                 "square distortion " + fmt(t) + " vs oracle " + fmt(oracle));
    }
    {
        ModulationConfig mc = default_config(Strategy::hipwm_fmtct);
        mc.carrier.fmtct = make_fmtct_params(0.5, mc.carrier.fmtct.m_bar,
                                             mc.modulating.fundamental_hz);
        mc.sampling.samples_per_period = std::size_t{1} << 16;
        const PipelineResult r = run_pipeline(mc);
        const SampledWaveform& line = r.voltages.line[0];
        const HarmonicSpectrum full =
            spectrum(line, int(line.samples_per_period() / 2));
        double sum_sq = full.dc * full.dc;
        for (const HarmonicBin& b : full.bins) sum_sq += b.rms * b.rms;
        const double rms = total_rms(line);
        const double gap = std::abs(rms * rms - sum_sq) / (rms * rms);
        c.expect(gap <= 1e-9, "Parseval gap " + fmt(gap));
        const double fund = full.rms_at(1);
        double worst = 0.0;
        for (int n = 3; n <= 48; n += 3) worst = std::max(worst, full.rms_at(n));
        c.expect(worst <= 1e-3 * fund,
                 "triplen line bin at " + fmt(worst / fund) + " of the fundamental");
    }
}

// 6. Distortion ordering at equal 220 V fundamental: phase-shifted beats
//    level-shifted, and the truncation sweep 0.30..0.80 bottoms out inside
//    [0.4, 0.6]. Failures report both numbers.
void criterion_6(Check& c) {
    const std::size_t spp = std::size_t{1} << 16;
    auto at_target = [&](Strategy s) {
        ModulationConfig mc = default_config(s);
        mc.sampling.samples_per_period = spp;
        mc.target_fundamental_rms_v = 220.0;
        return mc;
    };
    const PipelineResult ls = run_pipeline(at_target(Strategy::spwm1));
    const PipelineResult ps = run_pipeline(at_target(Strategy::spwm2));
    c.expect(ps.thd_line_n50 < ls.thd_line_n50,
             "ordering violated: SPWM2 " + fmt(ps.thd_line_n50) + " vs SPWM1 " +
                 fmt(ls.thd_line_n50));

    ModulationConfig base = at_target(Strategy::hipwm_fmtct);
    std::vector<double> ks;
    for (int i = 0; i <= 10; ++i) ks.push_back(0.30 + 0.05 * double(i));
    const auto rows = sweep_k(base, ks);
    double best_k = -1.0, best = 1e300;
    std::string table;
    for (const SweepRow& row : rows) {
        c.expect(row.error.empty(), "K=" + fmt(row.k_trunc) + " failed: " + row.error);
        if (!row.error.empty()) continue;
        table += " K=" + fmt(row.k_trunc) + ":" + fmt(row.thd_line_n50);
        if (row.thd_line_n50 < best) {
            best = row.thd_line_n50;
            best_k = row.k_trunc;
        }
    }
    c.expect(best_k >= 0.4 - 1e-9 && best_k <= 0.6 + 1e-9,
             "distortion minimum at K=" + fmt(best_k) + ", sweep:" + table);
}

// 7. Normalization: every strategy lands a commanded 220 V line fundamental
//    within 0.1%, confirmed by re-running with the solved amplitude index and
//    no target.
void criterion_7(Check& c) {
    const Strategy all[] = {Strategy::spwm1, Strategy::spwm2, Strategy::spwm3,
                            Strategy::hipwm_fmtct};
    for (Strategy s : all) {
        ModulationConfig mc = default_config(s);
        mc.sampling.samples_per_period = std::size_t{1} << 16;
        mc.target_fundamental_rms_v = 220.0;
        const PipelineResult solved = run_pipeline(mc);
        ModulationConfig fixed = solved.config;
        fixed.target_fundamental_rms_v.reset();
        const PipelineResult again = run_pipeline(fixed);
        const double rel = std::abs(again.fundamental_rms_line_v - 220.0) / 220.0;
        c.expect(rel <= 1e-3, std::string(strategy_name(s)) + " lands " +
                                  fmt(again.fundamental_rms_line_v) + " V (" + fmt(rel) +
                                  " relative)");
    }
}

bool read_file(const std::filesystem::path& p, std::string& out) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return false;
    std::ostringstream os;
    os << in.rdbuf();
    out = os.str();
    return true;
}

// Relative path -> content of every regular file under dir.
std::map<std::string, std::string> snapshot(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string content;
        read_file(entry.path(), content);
        files[fs::relative(entry.path(), dir).generic_string()] = std::move(content);
    }
    return files;
}

// 8. Determinism: every CLI command, run twice with the same arguments, must
//    produce byte-identical stdout and exported files.
void criterion_8(Check& c, const std::string& cli) {
    namespace fs = std::filesystem;
    if (cli.empty()) {
        c.expect(false, "CLI path missing: pass the binary as argv[1]");
        return;
    }
    const fs::path base = fs::temp_directory_path() / "pwmlab_acceptance";
    std::error_code ec;
    fs::remove_all(base, ec);
    const std::string cmds[] = {
        "verify-table1 --out {OUT}/table1.csv",
        "synthesize --sampling 4096 --target-rms 200 --out-dir {OUT}",
        "sweep-k --sampling 4096 --k 0.4 --k 0.55 --out-dir {OUT}",
        "compare --sampling 4096 --target-rms 150 --out-dir {OUT}",
        "predict-acoustics --sampling 4096 --out-dir {OUT}",
        "predict-acoustics --sine --out-dir {OUT}",
    };
    int index = 0;
    for (const std::string& args : cmds) {
        const std::string label = "run " + std::to_string(index);
        std::array<std::map<std::string, std::string>, 2> seen;
        bool ran = true;
        for (int copy = 0; copy < 2 && ran; ++copy) {
            const fs::path dir =
                base / ("cmd" + std::to_string(index) + (copy == 0 ? "_a" : "_b"));
            fs::create_directories(dir);
            std::string cmd = args;
            for (auto pos = cmd.find("{OUT}"); pos != std::string::npos;
                 pos = cmd.find("{OUT}", pos))
                cmd.replace(pos, 5, dir.string());
            const std::string full = cli + " " + cmd + " > " + (dir / "stdout.txt").string() +
                                     " 2> " + (dir / "stderr.txt").string();
            const int rc = std::system(full.c_str());
            if (rc != 0) {
                c.expect(false, label + " exited " + std::to_string(rc) + " (" + args + ")");
                ran = false;
                break;
            }
            seen[copy] = snapshot(dir);
        }
        if (ran) {
            if (seen[0].size() != seen[1].size())
                c.expect(false, label + " produced different file sets");
            else
                for (const auto& [name, content] : seen[0]) {
                    const auto it = seen[1].find(name);
                    c.expect(it != seen[1].end() && it->second == content,
                             label + " differs in " + name);
                }
        }
        ++index;
    }
}

// 9. Randomized property sample: 21 valid configs with random amplitude,
//    phase and truncation. Each must keep 15 pulses per leg per period, stay
//    quiet strictly inside the blocked windows, assemble without shoot-through
//    with and without dead time, and suppress even harmonics.
void criterion_9(Check& c) {
    std::mt19937 rng(20260819u);
    std::uniform_real_distribution<double> ma_dist(0.3, 0.95);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> k_dist(0.1, 0.85);
    std::uniform_int_distribution<int> dead_dist(2, 6);
    const Strategy pool[] = {Strategy::spwm2, Strategy::spwm3, Strategy::hipwm_fmtct};
    const std::size_t spp = std::size_t{1} << 13;
    int tested = 0;
    for (int i = 0; i < 21; ++i) {
        const Strategy s = pool[i % 3];
        ModulationConfig mc = default_config(s);
        mc.sampling.samples_per_period = spp;
        mc.modulating.amplitude_index = ma_dist(rng);
        // The frequency law lives in the modulating wave's own frame: a bare
        // phase offset slides the wave out of the blocked windows, so random
        // phase only applies to the fixed-carrier strategies.
        const double phase = phase_dist(rng);
        if (s != Strategy::hipwm_fmtct) mc.modulating.phase_rad = phase;
        const double k = k_dist(rng); // drawn every round to keep the stream aligned
        const int dead_samples = dead_dist(rng);
        if (s == Strategy::hipwm_fmtct)
            mc.carrier.fmtct =
                make_fmtct_params(k, mc.carrier.fmtct.m_bar, mc.modulating.fundamental_hz);
        validate(mc);
        std::string tag = "#" + std::to_string(i) + " " + strategy_name(s) +
                          " Ma=" + fmt(mc.modulating.amplitude_index);
        if (s == Strategy::hipwm_fmtct) tag += " K=" + fmt(k);

        PipelineResult r;
        try {
            r = run_pipeline(mc);
        } catch (const std::exception& e) {
            c.expect(false, tag + " threw: " + e.what());
            continue;
        }
        c.expect(r.pulse_count_per_leg == 15,
                 tag + " has " + std::to_string(r.pulse_count_per_leg) + " pulses per leg");

        auto even_floor = [&](const HarmonicSpectrum& sp, const char* which) {
            const double fund = sp.rms_at(1);
            double worst = 0.0;
            for (int n = 2; n <= 50; n += 2) worst = std::max(worst, sp.rms_at(n));
            c.expect(worst <= 1e-6 * fund, tag + " even " + which + " bin at " +
                                               fmt(worst / fund) + " of the fundamental");
        };
        even_floor(r.phase_spectrum, "phase");
        even_floor(r.line_spectrum, "line");

        if (s == Strategy::hipwm_fmtct) {
            // no gate may change strictly inside a blocked window, any phase
            const LobeTimes lt = lobe_times(mc.carrier.fmtct);
            const double period = 1.0 / mc.modulating.fundamental_hz;
            const std::size_t n = r.schedule.phases[0][0].a_upper.values.size();
            for (int phase = 0; phase < 3; ++phase) {
                const double delay = double(phase) * period / 3.0;
                auto quiet = [&](double lo_t, double hi_t) {
                    const auto lo = std::size_t(
                        std::ceil((lo_t + delay) / period * double(spp))) + 3;
                    const auto hi = std::size_t(
                        std::floor((hi_t + delay) / period * double(spp))) - 3;
                    for (const CellGates& cell : r.schedule.phases[std::size_t(phase)]) {
                        const PulseTrain* trains[] = {&cell.a_upper, &cell.a_lower,
                                                      &cell.b_upper, &cell.b_lower};
                        for (const PulseTrain* train : trains)
                            for (std::size_t j = lo; j < hi; ++j)
                                if (train->values[j % n] != train->values[(j + 1) % n]) {
                                    c.expect(false, tag + " switches inside a blocked window of phase " +
                                                        std::to_string(phase));
                                    return;
                                }
                    }
                };
                quiet(lt.t1, lt.t2);
                quiet(lt.t3, lt.t4);
            }
        }

        ModulationConfig with_dead = mc;
        with_dead.topology.dead_time_s = double(dead_samples) / mc.sample_rate_hz();
        try {
            (void)run_pipeline(with_dead); // shoot-through would throw inside
        } catch (const std::exception& e) {
            c.expect(false, tag + " with dead time threw: " + e.what());
        }
        ++tested;
    }
    c.expect(tested >= 20, "only " + std::to_string(tested) + " configs ran");
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    int failed = 0;
    auto run = [&](int n, const char* what, auto&& body) {
        Check c;
        try {
            body(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what;
        if (!c.ok) std::cout << " [" << c.why << "]";
        std::cout << std::endl;
        if (!c.ok) ++failed;
    };
    run(1, "carrier-law calibration table", [](Check& c) { criterion_1(c); });
    run(2, "slot-harmonic families", [](Check& c) { criterion_2(c); });
    run(3, "switching sideband catalog", [](Check& c) { criterion_3(c); });
    run(4, "truncated-carrier structure", [](Check& c) { criterion_4(c); });
    run(5, "spectral accuracy", [](Check& c) { criterion_5(c); });
    run(6, "distortion ordering at equal fundamental", [](Check& c) { criterion_6(c); });
    run(7, "fundamental normalization", [](Check& c) { criterion_7(c); });
    run(8, "CLI determinism", [&](Check& c) { criterion_8(c, cli); });
    run(9, "randomized property sample", [](Check& c) { criterion_9(c); });
    return failed == 0 ? 0 : 1;
}
