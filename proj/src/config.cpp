#include "pwmlab/config.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pwmlab/error.hpp"
#include "pwmlab/fmtct.hpp"

namespace pwmlab {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const char* where, std::set<std::string> allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key))
            fail("config", std::string("unknown key '") + key + "' in " + where);
    }
}

double to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
double to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

CarrierSpec::Kind kind_for(Strategy s) {
    switch (s) {
    case Strategy::spwm1: return CarrierSpec::Kind::level_shifted_set;
    case Strategy::spwm2:
    case Strategy::spwm3: return CarrierSpec::Kind::phase_shifted_set;
    case Strategy::hipwm_fmtct: return CarrierSpec::Kind::fm_truncated;
    }
    fail("config", "unhandled strategy");
}

} // namespace

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::spwm1: return "SPWM1";
    case Strategy::spwm2: return "SPWM2";
    case Strategy::spwm3: return "SPWM3";
    case Strategy::hipwm_fmtct: return "HIPWM_FMTCT";
    }
    return "unknown";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "SPWM1") return Strategy::spwm1;
    if (name == "SPWM2") return Strategy::spwm2;
    if (name == "SPWM3") return Strategy::spwm3;
    if (name == "HIPWM_FMTCT") return Strategy::hipwm_fmtct;
    fail("config", "unknown strategy '" + name +
                       "'; expected SPWM1, SPWM2, SPWM3 or HIPWM_FMTCT");
}

double ModulationConfig::sample_rate_hz() const {
    return static_cast<double>(sampling.samples_per_period) * modulating.fundamental_hz;
}

ModulationConfig default_config(Strategy s) {
    ModulationConfig c;
    c.strategy = s;
    c.modulating.fundamental_hz = 50.0;
    c.modulating.amplitude_index = 0.9;
    c.modulating.phase_rad = 0.0;
    const bool injected = (s == Strategy::spwm3 || s == Strategy::hipwm_fmtct);
    c.modulating.injection = injected ? default_injection()
                                      : std::vector<std::pair<int, double>>{};
    c.carrier.kind = kind_for(s);
    c.carrier.cells = 2;
    c.carrier.order_m = 15.0;
    if (s == Strategy::hipwm_fmtct)
        c.carrier.fmtct = make_fmtct_params(0.5, 15.0, c.modulating.fundamental_hz);
    c.topology.cells_per_phase = 2;
    c.topology.vdc_per_cell = 150.0;
    c.topology.dead_time_s = 0.0;
    return c;
}

void validate(const ModulationConfig& c) {
    validate(c.modulating);
    validate(c.topology);
    if (c.carrier.kind != kind_for(c.strategy))
        fail("config", std::string(strategy_name(c.strategy)) +
                           " does not use the configured carrier kind");
    if ((c.strategy == Strategy::spwm3 || c.strategy == Strategy::hipwm_fmtct) &&
        c.modulating.injection.empty())
        fail("config", std::string(strategy_name(c.strategy)) +
                           " requires a nonempty harmonic injection list");
    if (c.carrier.cells != c.topology.cells_per_phase)
        fail("config", "carrier set and topology disagree on cells per phase");
    if (c.sampling.periods == 0) fail("config", "need at least one period");
    if (!std::has_single_bit(c.sampling.samples_per_period) ||
        c.sampling.samples_per_period < 64)
        fail("config", "samples per period must be a power of two, at least 64");
    if (c.strategy == Strategy::hipwm_fmtct) {
        if (std::abs(c.carrier.fmtct.fundamental_hz() - c.modulating.fundamental_hz) > 1e-9)
            fail("config", "carrier law and modulating wave disagree on the fundamental");
        if (std::abs(c.carrier.fmtct.m_bar - c.carrier.order_m) > 1e-9)
            fail("config", "carrier order and mean switching order disagree");
    }
    if (c.target_fundamental_rms_v && !(*c.target_fundamental_rms_v > 0.0))
        fail("config", "target fundamental RMS must be positive");
}

double switching_frequency_hz(const ModulationConfig& c) {
    if (c.strategy == Strategy::hipwm_fmtct)
        return c.carrier.fmtct.m_bar * c.modulating.fundamental_hz;
    return c.carrier.order_m * c.modulating.fundamental_hz;
}

ModulationConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail("config", std::string("malformed JSON: ") + e.what());
    }
    try {
        check_keys(j, "config root",
                   {"strategy", "modulating", "carrier", "topology", "sampling",
                    "target_fundamental_rms_v"});
        if (!j.contains("strategy")) fail("config", "missing 'strategy'");
        ModulationConfig c = default_config(strategy_from_name(j.at("strategy")));

        if (j.contains("modulating")) {
            const json& m = j.at("modulating");
            check_keys(m, "modulating",
                       {"fundamental_hz", "amplitude_index", "phase_deg", "injection"});
            c.modulating.fundamental_hz =
                m.value("fundamental_hz", c.modulating.fundamental_hz);
            c.modulating.amplitude_index =
                m.value("amplitude_index", c.modulating.amplitude_index);
            if (m.contains("phase_deg")) c.modulating.phase_rad = to_rad(m.at("phase_deg"));
            if (m.contains("injection")) {
                c.modulating.injection.clear();
                for (const json& pair : m.at("injection")) {
                    if (!pair.is_array() || pair.size() != 2)
                        fail("config", "each injection entry is a [order, amplitude] pair");
                    c.modulating.injection.emplace_back(pair.at(0).get<int>(),
                                                        pair.at(1).get<double>());
                }
            }
        }
        if (j.contains("carrier")) {
            const json& k = j.at("carrier");
            check_keys(k, "carrier",
                       {"cells", "order_m", "k_trunc", "m_bar", "phase_offsets_deg"});
            c.carrier.cells = k.value("cells", c.carrier.cells);
            c.carrier.order_m = k.value("order_m", c.carrier.order_m);
            if (k.contains("phase_offsets_deg"))
                c.carrier.phase_offsets_deg =
                    k.at("phase_offsets_deg").get<std::vector<double>>();
            if (c.strategy == Strategy::hipwm_fmtct) {
                const double k_trunc = k.value("k_trunc", c.carrier.fmtct.k_trunc);
                const double m_bar = k.value("m_bar", c.carrier.fmtct.m_bar);
                c.carrier.order_m = m_bar;
                c.carrier.fmtct = make_fmtct_params(k_trunc, m_bar,
                                                    c.modulating.fundamental_hz);
            } else if (k.contains("k_trunc") || k.contains("m_bar")) {
                fail("config", "k_trunc/m_bar only apply to HIPWM_FMTCT");
            }
        } else if (c.strategy == Strategy::hipwm_fmtct) {
            // The default carrier law was built for the default fundamental.
            c.carrier.fmtct = make_fmtct_params(c.carrier.fmtct.k_trunc,
                                                c.carrier.fmtct.m_bar,
                                                c.modulating.fundamental_hz);
        }
        if (j.contains("topology")) {
            const json& t = j.at("topology");
            check_keys(t, "topology", {"cells_per_phase", "vdc_per_cell_v", "dead_time_s"});
            c.topology.cells_per_phase = t.value("cells_per_phase", c.topology.cells_per_phase);
            c.topology.vdc_per_cell = t.value("vdc_per_cell_v", c.topology.vdc_per_cell);
            c.topology.dead_time_s = t.value("dead_time_s", c.topology.dead_time_s);
        }
        if (j.contains("sampling")) {
            const json& s = j.at("sampling");
            check_keys(s, "sampling", {"samples_per_period", "periods"});
            c.sampling.samples_per_period =
                s.value("samples_per_period", c.sampling.samples_per_period);
            c.sampling.periods = s.value("periods", c.sampling.periods);
        }
        if (j.contains("target_fundamental_rms_v") &&
            !j.at("target_fundamental_rms_v").is_null())
            c.target_fundamental_rms_v = j.at("target_fundamental_rms_v").get<double>();

        validate(c);
        return c;
    } catch (const json::exception& e) {
        fail("config", std::string("bad config value: ") + e.what());
    }
}

ModulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("config", "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_text(const ModulationConfig& c) {
    json j;
    j["strategy"] = strategy_name(c.strategy);
    json m;
    m["fundamental_hz"] = c.modulating.fundamental_hz;
    m["amplitude_index"] = c.modulating.amplitude_index;
    m["phase_deg"] = to_deg(c.modulating.phase_rad);
    json inj = json::array();
    for (const auto& [order, amp] : c.modulating.injection)
        inj.push_back(json::array({order, amp}));
    m["injection"] = inj;
    j["modulating"] = m;
    json k;
    k["cells"] = c.carrier.cells;
    if (c.strategy == Strategy::hipwm_fmtct) {
        k["k_trunc"] = c.carrier.fmtct.k_trunc;
        k["m_bar"] = c.carrier.fmtct.m_bar;
    } else {
        k["order_m"] = c.carrier.order_m;
        if (!c.carrier.phase_offsets_deg.empty())
            k["phase_offsets_deg"] = c.carrier.phase_offsets_deg;
    }
    j["carrier"] = k;
    json t;
    t["cells_per_phase"] = c.topology.cells_per_phase;
    t["vdc_per_cell_v"] = c.topology.vdc_per_cell;
    t["dead_time_s"] = c.topology.dead_time_s;
    j["topology"] = t;
    json s;
    s["samples_per_period"] = c.sampling.samples_per_period;
    s["periods"] = c.sampling.periods;
    j["sampling"] = s;
    if (c.target_fundamental_rms_v)
        j["target_fundamental_rms_v"] = *c.target_fundamental_rms_v;
    return j.dump(2) + "\n";
}

void save_config(const ModulationConfig& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("config", "cannot write config file '" + path + "'");
    out << config_text(c);
}

} // namespace pwmlab
