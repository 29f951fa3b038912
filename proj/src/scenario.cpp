#include "qlink/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "qlink/errors.hpp"
#include "qlink/version.hpp"

namespace qlink::scenario {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------
// field registry
// ---------------------------------------------------------------------

struct Field {
    std::function<void(Scenario&, const std::string&)> set;
    std::function<std::string(const Scenario&)> get;
};

double parse_number(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double parsed = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ParseError("value for '" + key + "' is not a number: '" + value + "'");
    }
    return parsed;
}

std::int64_t parse_integer(const std::string& key, const std::string& value) {
    const double parsed = parse_number(key, value);
    if (parsed != std::floor(parsed)) {
        throw ParseError("value for '" + key + "' must be an integer: '" + value + "'");
    }
    return static_cast<std::int64_t>(parsed);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "on" || value == "1") return true;
    if (value == "false" || value == "off" || value == "0") return false;
    throw ParseError("value for '" + key + "' is not a boolean: '" + value + "'");
}

std::vector<double> parse_number_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        out.push_back(parse_number(key, item));
    }
    if (out.empty()) {
        throw ParseError("value for '" + key + "' must be a comma-separated number list");
    }
    return out;
}

Field number_field(double Scenario::* member) {
    return {[member](Scenario& s, const std::string& v) {
                s.*member = parse_number("", v);
            },
            [member](const Scenario& s) { return table::format_number(s.*member); }};
}

Field integer_field(std::int64_t Scenario::* member) {
    return {[member](Scenario& s, const std::string& v) { s.*member = parse_integer("", v); },
            [member](const Scenario& s) { return std::to_string(s.*member); }};
}

Field int_field(int Scenario::* member) {
    return {[member](Scenario& s, const std::string& v) {
                s.*member = static_cast<int>(parse_integer("", v));
            },
            [member](const Scenario& s) { return std::to_string(s.*member); }};
}

Field bool_field(bool Scenario::* member) {
    return {[member](Scenario& s, const std::string& v) { s.*member = parse_bool("", v); },
            [member](const Scenario& s) { return (s.*member) ? "true" : "false"; }};
}

const std::map<std::string, Field>& registry() {
    static const std::map<std::string, Field> fields = [] {
        std::map<std::string, Field> m;
        m["scenario.name"] = {[](Scenario& s, const std::string& v) { s.name = v; },
                              [](const Scenario& s) { return s.name; }};
        m["run.mode"] = {
            [](Scenario& s, const std::string& v) {
                if (v == "link-budget") s.mode = RunMode::LinkBudget;
                else if (v == "repeater-sweep") s.mode = RunMode::RepeaterSweep;
                else if (v == "maqkd-compare") s.mode = RunMode::MaqkdCompare;
                else if (v == "maqkd-map") s.mode = RunMode::MaqkdMap;
                else throw ValidationError("run.mode must be one of link-budget, "
                                           "repeater-sweep, maqkd-compare, maqkd-map");
            },
            [](const Scenario& s) {
                switch (s.mode) {
                    case RunMode::LinkBudget: return "link-budget";
                    case RunMode::RepeaterSweep: return "repeater-sweep";
                    case RunMode::MaqkdCompare: return "maqkd-compare";
                    case RunMode::MaqkdMap: return "maqkd-map";
                }
                return "link-budget";
            }};

        m["geometry.total_ground_distance_km"] = number_field(&Scenario::total_ground_distance_km);
        m["geometry.altitude_km"] = number_field(&Scenario::altitude_km);
        m["geometry.nesting_level"] = int_field(&Scenario::nesting_level);
        m["geometry.earth_radius_km"] = number_field(&Scenario::earth_radius_km);
        m["geometry.architecture"] = {
            [](Scenario& s, const std::string& v) {
                if (v == "fullspace") s.architecture = geometry::Architecture::FullSpace;
                else if (v == "hybrid") s.architecture = geometry::Architecture::HybridGround;
                else throw ValidationError("geometry.architecture must be fullspace or hybrid");
            },
            [](const Scenario& s) {
                return s.architecture == geometry::Architecture::FullSpace ? "fullspace"
                                                                           : "hybrid";
            }};

        m["beam.wavelength_nm"] = number_field(&Scenario::wavelength_nm);
        m["beam.divergence_urad"] = number_field(&Scenario::divergence_urad);
        m["beam.m_squared"] = number_field(&Scenario::m_squared);
        m["receiver.radius_m"] = number_field(&Scenario::receiver_radius_m);
        m["sender.radius_m"] = number_field(&Scenario::sender_radius_m);
        m["atmosphere.zenith_transmissivity"] = number_field(&Scenario::zenith_transmissivity);
        m["pointing.enabled"] = bool_field(&Scenario::pointing_enabled);
        m["pointing.sigma_urad"] = number_field(&Scenario::pointing_sigma_urad);
        m["detector.efficiency"] = number_field(&Scenario::detector_efficiency);
        m["detector.dark_prob_per_window"] = number_field(&Scenario::dark_prob_per_window);
        m["stray.sky_brightness_w_m2_sr_m"] = number_field(&Scenario::stray_sky_brightness);
        m["stray.fov_sr"] = number_field(&Scenario::stray_fov_sr);
        m["stray.filter_bandwidth_nm"] = number_field(&Scenario::stray_filter_bandwidth_nm);
        m["stray.window_us"] = number_field(&Scenario::stray_window_us);

        m["repeater.source_rate_mhz"] = number_field(&Scenario::rep_source_rate_mhz);
        m["repeater.source_efficiency"] = number_field(&Scenario::rep_source_efficiency);
        m["repeater.pair_probability"] = number_field(&Scenario::rep_pair_probability);
        m["repeater.qnd_efficiency"] = number_field(&Scenario::rep_qnd_efficiency);
        m["repeater.memory_efficiency"] = number_field(&Scenario::rep_memory_efficiency);
        m["repeater.multimode_modes"] = integer_field(&Scenario::rep_multimode_modes);

        m["maqkd.protocol"] = {
            [](Scenario& s, const std::string& v) {
                if (v != "uplink" && v != "downlink") {
                    throw ValidationError("maqkd.protocol must be uplink or downlink");
                }
                s.maqkd_protocol = v;
            },
            [](const Scenario& s) { return s.maqkd_protocol; }};
        m["maqkd.source_rate_mhz"] = number_field(&Scenario::ma_source_rate_mhz);
        m["maqkd.dephasing_time_s"] = number_field(&Scenario::ma_dephasing_time_s);
        m["maqkd.memory_efficiency"] = number_field(&Scenario::ma_memory_efficiency);
        m["maqkd.temporal_modes"] = integer_field(&Scenario::ma_temporal_modes);
        m["maqkd.memory_pairs"] = integer_field(&Scenario::ma_memory_pairs);
        m["maqkd.qnd_efficiency"] = number_field(&Scenario::ma_qnd_efficiency);
        m["maqkd.ec_inefficiency"] = number_field(&Scenario::ma_ec_inefficiency);
        m["maqkd.misalignment_error"] = number_field(&Scenario::ma_misalignment_error);
        m["maqkd.bsm_success"] = number_field(&Scenario::ma_bsm_success);
        m["maqkd.pair_emission_prob"] = number_field(&Scenario::ma_pair_emission_prob);
        m["maqkd.uplink_extra_loss_db"] = number_field(&Scenario::ma_uplink_extra_loss_db);

        m["compare.uplink_tau_s"] = number_field(&Scenario::cmp_uplink_tau_s);
        m["compare.downlink_tau_single_s"] = number_field(&Scenario::cmp_downlink_tau_single_s);
        m["compare.downlink_tau_multi_s"] = number_field(&Scenario::cmp_downlink_tau_multi_s);
        m["compare.temporal_modes"] = integer_field(&Scenario::cmp_temporal_modes);
        m["compare.memory_pairs"] = integer_field(&Scenario::cmp_memory_pairs);

        m["sweep.variable"] = {
            [](Scenario& s, const std::string& v) { s.sweep_variable = v; },
            [](const Scenario& s) { return s.sweep_variable; }};
        m["sweep.min"] = number_field(&Scenario::sweep_min);
        m["sweep.max"] = number_field(&Scenario::sweep_max);
        m["sweep.points"] = int_field(&Scenario::sweep_points);
        m["sweep.scale"] = {
            [](Scenario& s, const std::string& v) {
                if (v == "linear") s.sweep_scale = SweepScale::Linear;
                else if (v == "log") s.sweep_scale = SweepScale::Log;
                else throw ValidationError("sweep.scale must be linear or log");
            },
            [](const Scenario& s) {
                return s.sweep_scale == SweepScale::Linear ? "linear" : "log";
            }};

        m["map.eta_min"] = number_field(&Scenario::map_eta_min);
        m["map.eta_max"] = number_field(&Scenario::map_eta_max);
        m["map.eta_points"] = int_field(&Scenario::map_eta_points);

        m["linkbudget.divergences_urad"] = {
            [](Scenario& s, const std::string& v) {
                s.linkbudget_divergences_urad = parse_number_list("linkbudget.divergences_urad", v);
            },
            [](const Scenario& s) {
                std::string out;
                for (std::size_t i = 0; i < s.linkbudget_divergences_urad.size(); ++i) {
                    out += (i ? "," : "") +
                           table::format_number(s.linkbudget_divergences_urad[i]);
                }
                return out;
            }};
        return m;
    }();
    return fields;
}

void check(bool ok, const std::string& message) {
    if (!ok) {
        throw ValidationError(message);
    }
}

void check_probability(double value, const std::string& key) {
    check(value >= 0.0 && value <= 1.0,
          key + " = " + table::format_number(value) + " violates the [0, 1] invariant");
}

// ---------------------------------------------------------------------
// sweep evaluation
// ---------------------------------------------------------------------

/// Runs fn(i) for every index with `jobs` workers; results land in a
/// pre-sized vector so output order never depends on scheduling.
void parallel_rows(std::size_t count, int jobs,
                   const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = std::min<int>(jobs, static_cast<int>(count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

table::ResultTable table_shell(const Scenario& s) {
    table::ResultTable t;
    t.tool_version = kToolVersion;
    t.ledger_version = kModelLedgerVersion;
    t.scenario_hash = table::fnv1a64(s.canonical_string());
    return t;
}

table::ResultTable run_repeater_sweep(const Scenario& s, int jobs) {
    repeater::SweepVariable variable;
    std::string x_name;
    std::string x_unit;
    if (s.sweep_variable == "total_distance_km") {
        variable = repeater::SweepVariable::TotalDistance;
        x_name = "L_km";
        x_unit = "km";
    } else if (s.sweep_variable == "divergence_urad") {
        variable = repeater::SweepVariable::Divergence;
        x_name = "divergence_urad";
        x_unit = "urad";
    } else if (s.sweep_variable == "memory_efficiency") {
        variable = repeater::SweepVariable::MemoryEfficiency;
        x_name = "memory_rw_efficiency";
        x_unit = "1";
    } else {
        throw ValidationError("sweep.variable '" + s.sweep_variable +
                              "' is not valid for repeater-sweep");
    }

    const auto grid = make_grid(s.sweep_min, s.sweep_max, s.sweep_points, s.sweep_scale);
    const auto base = s.repeater_sweep_config();

    table::ResultTable t = table_shell(s);
    t.columns = {x_name,          "t_dlcz_single", "t_dlcz_multimode",
                 "t_hybrid_qnd",  "t_space_qnd",   "eta_tr_max",
                 "n_modes_required"};
    t.units = {x_unit, "s", "s", "s", "s", "1", "1"};
    t.rows.assign(grid.size(), std::vector<double>(t.columns.size(), kNan));

    parallel_rows(grid.size(), jobs, [&](std::size_t i) {
        repeater::RepeaterSweepConfig cfg = base;
        double x = grid[i];
        switch (variable) {
            case repeater::SweepVariable::TotalDistance:
                cfg.total_ground_distance_km = x;
                break;
            case repeater::SweepVariable::Divergence:
                cfg.beam = channel::BeamParams::from_divergence(base.beam.wavelength_m,
                                                                base.beam.m_squared, x * 1e-6);
                break;
            case repeater::SweepVariable::MemoryEfficiency:
                cfg.repeater.set_read_write_efficiency(x);
                break;
        }
        auto& row = t.rows[i];
        row[0] = x;
        try {
            const auto point = repeater::architecture_times(cfg);
            row[1] = point.t_dlcz_single_s;
            row[2] = point.t_dlcz_multimode_s;
            row[3] = point.t_hybrid_qnd_s;
            row[4] = point.t_space_qnd_s;

            // temporal-mode requirement of the best (memory-feeding) channel
            const auto layout = geometry::constellation_layout(
                cfg.total_ground_distance_km, cfg.repeater.nesting_level, cfg.orbit, cfg.earth,
                geometry::Architecture::FullSpace);
            double eta_max = 0.0;
            const channel::PointingModel no_pointing{};
            for (const auto& hop : layout.hops) {
                eta_max = std::max(eta_max,
                                   channel::hop_transmission(hop, cfg.beam, cfg.receiver,
                                                             cfg.atmosphere, no_pointing)
                                       .eta_total);
            }
            row[5] = eta_max;
            row[6] = repeater::required_modes(cfg.repeater.source_rate_hz,
                                              cfg.repeater.source_efficiency, eta_max,
                                              layout.segment_length_km)
                         .modes;
        } catch (const Error&) {
            // row already NaN
        }
    });
    return t;
}

table::ResultTable run_maqkd_compare(const Scenario& s, int jobs) {
    if (s.sweep_variable != "total_distance_km") {
        throw ValidationError("maqkd-compare sweeps total_distance_km only");
    }
    const auto grid = make_grid(s.sweep_min, s.sweep_max, s.sweep_points, s.sweep_scale);
    const auto stack = s.channel_stack();
    const auto params = s.protocol_params();
    const auto orbit = s.orbit();
    const auto earth = s.earth();

    maqkd::MemoryModel uplink_memory = s.memory_model();
    uplink_memory.dephasing_time_s = s.cmp_uplink_tau_s;
    uplink_memory.temporal_modes = 1;
    uplink_memory.pairs = 1;

    maqkd::MemoryModel down_single = s.memory_model();
    down_single.dephasing_time_s = s.cmp_downlink_tau_single_s;
    down_single.temporal_modes = 1;
    down_single.pairs = 1;

    maqkd::MemoryModel down_multi = down_single;
    down_multi.temporal_modes = s.cmp_temporal_modes;

    maqkd::MemoryModel down_banked = down_multi;
    down_banked.dephasing_time_s = s.cmp_downlink_tau_multi_s;
    down_banked.pairs = s.cmp_memory_pairs;

    table::ResultTable t = table_shell(s);
    t.columns = {"L_km",          "r_e91",          "r_uplink",
                 "r_down_m1_n1",  "r_down_m1_n1000", "r_down_m100_n1000"};
    t.units = {"km", "bit/s", "bit/s", "bit/s", "bit/s", "bit/s"};
    t.rows.assign(grid.size(), std::vector<double>(t.columns.size(), kNan));

    parallel_rows(grid.size(), jobs, [&](std::size_t i) {
        const double L = grid[i];
        auto& row = t.rows[i];
        row[0] = L;
        const auto rate = [&](const std::function<maqkd::KeyRateResult()>& fn) {
            try {
                return fn().secret_bits_per_s;
            } catch (const Error&) {
                return kNan;
            }
        };
        row[1] = rate([&] { return maqkd::e91_rate(L, orbit, earth, stack, params); });
        row[2] = rate(
            [&] { return maqkd::uplink_ma_rate(L, orbit, earth, stack, uplink_memory, params); });
        row[3] = rate(
            [&] { return maqkd::downlink_ma_rate(L, orbit, earth, stack, down_single, params); });
        row[4] = rate(
            [&] { return maqkd::downlink_ma_rate(L, orbit, earth, stack, down_multi, params); });
        row[5] = rate(
            [&] { return maqkd::downlink_ma_rate(L, orbit, earth, stack, down_banked, params); });
    });
    return t;
}

table::ResultTable run_maqkd_map(const Scenario& s, int jobs) {
    if (s.sweep_variable != "tau_s") {
        throw ValidationError("maqkd-map sweeps tau_s (map.eta_* carries the second axis)");
    }
    const auto taus = make_grid(s.sweep_min, s.sweep_max, s.sweep_points, s.sweep_scale);
    const auto etas =
        make_grid(s.map_eta_min, s.map_eta_max, s.map_eta_points, SweepScale::Linear);
    const auto stack = s.channel_stack();
    const auto params = s.protocol_params();
    const auto memory = s.memory_model();
    const auto protocol = s.maqkd_protocol == "uplink" ? maqkd::Protocol::Uplink
                                                       : maqkd::Protocol::Downlink;
    const auto orbit = s.orbit();
    const auto earth = s.earth();

    table::ResultTable t = table_shell(s);
    t.columns = {"tau_s"};
    t.units = {"s"};
    for (const double eta : etas) {
        t.columns.push_back("eta_mem=" + table::format_number(eta));
        t.units.push_back("bit/s");
    }
    t.rows.assign(taus.size(), std::vector<double>(t.columns.size(), kNan));

    parallel_rows(taus.size(), jobs, [&](std::size_t i) {
        const auto map = maqkd::rate_map(protocol, s.total_ground_distance_km, orbit, earth,
                                         stack, memory, params, {taus[i]}, etas);
        auto& row = t.rows[i];
        row[0] = taus[i];
        for (std::size_t j = 0; j < etas.size(); ++j) {
            row[j + 1] = map.rate_bits_per_s[j];
        }
    });
    return t;
}

table::ResultTable run_link_budget(const Scenario& s, int jobs) {
    const bool space_ground = s.sweep_variable == "slant_range_km";
    if (!space_ground && s.sweep_variable != "intersat_range_km") {
        throw ValidationError("link-budget sweeps slant_range_km or intersat_range_km");
    }
    const auto grid = make_grid(s.sweep_min, s.sweep_max, s.sweep_points, s.sweep_scale);
    const auto stack = s.channel_stack();
    const auto orbit = s.orbit();
    const auto earth = s.earth();

    table::ResultTable t = table_shell(s);
    t.columns = {space_ground ? "slant_km" : "intersat_km"};
    t.units = {"km"};
    for (const double div : s.linkbudget_divergences_urad) {
        t.columns.push_back("loss_db_" + table::format_number(div) + "urad");
        t.units.push_back("dB");
    }
    t.rows.assign(grid.size(), std::vector<double>(t.columns.size(), kNan));

    parallel_rows(grid.size(), jobs, [&](std::size_t i) {
        const double d = grid[i];
        auto& row = t.rows[i];
        row[0] = d;
        geometry::LinkGeometry link;
        link.path_length_km = d;
        try {
            if (space_ground) {
                link.kind = geometry::LinkKind::SpaceGround;
                const double arc = geometry::arc_from_slant(d, orbit, earth);
                link.ground_arc_km = arc;
                link.elevation_rad = geometry::elevation_angle(arc, orbit, earth);
            } else {
                link.kind = geometry::LinkKind::InterSatellite;
            }
        } catch (const Error&) {
            return;
        }
        for (std::size_t j = 0; j < s.linkbudget_divergences_urad.size(); ++j) {
            const auto beam = channel::BeamParams::from_divergence(
                stack.beam.wavelength_m, stack.beam.m_squared,
                s.linkbudget_divergences_urad[j] * 1e-6);
            try {
                const double eta = channel::hop_transmission(link, beam, stack.receiver,
                                                             stack.atmosphere, stack.pointing)
                                       .eta_total;
                row[j + 1] = -10.0 * std::log10(eta);
            } catch (const Error&) {
                // leave NaN
            }
        }
    });
    return t;
}

}  // namespace

// ---------------------------------------------------------------------
// Scenario methods
// ---------------------------------------------------------------------

channel::ChannelStack Scenario::channel_stack() const {
    channel::ChannelStack stack;
    stack.beam = channel::BeamParams::from_divergence(wavelength_nm * 1e-9, m_squared,
                                                      divergence_urad * 1e-6);
    stack.receiver = channel::Aperture{receiver_radius_m};
    stack.atmosphere = channel::AtmosphereModel{zenith_transmissivity};
    stack.pointing = channel::PointingModel{pointing_sigma_urad * 1e-6, pointing_enabled};
    stack.stray = channel::StrayLightModel{stray_sky_brightness, stray_fov_sr,
                                           stray_filter_bandwidth_nm * 1e-9,
                                           stray_window_us * 1e-6, wavelength_nm * 1e-9};
    stack.detector = channel::DetectorModel{detector_efficiency, dark_prob_per_window};
    return stack;
}

repeater::RepeaterSweepConfig Scenario::repeater_sweep_config() const {
    repeater::RepeaterSweepConfig cfg;
    cfg.repeater.nesting_level = nesting_level;
    cfg.repeater.source_rate_hz = rep_source_rate_mhz * 1e6;
    cfg.repeater.source_efficiency = rep_source_efficiency;
    cfg.repeater.pair_probability = rep_pair_probability;
    cfg.repeater.qnd_efficiency = rep_qnd_efficiency;
    cfg.repeater.set_memory_efficiency(rep_memory_efficiency);
    cfg.repeater.detector = channel::DetectorModel{detector_efficiency, dark_prob_per_window};
    cfg.multimode_modes = rep_multimode_modes;
    cfg.total_ground_distance_km = total_ground_distance_km;
    cfg.orbit = orbit();
    cfg.earth = earth();
    cfg.beam = channel::BeamParams::from_divergence(wavelength_nm * 1e-9, m_squared,
                                                    divergence_urad * 1e-6);
    cfg.receiver = channel::Aperture{receiver_radius_m};
    cfg.atmosphere = channel::AtmosphereModel{zenith_transmissivity};
    return cfg;
}

maqkd::MemoryModel Scenario::memory_model() const {
    maqkd::MemoryModel memory;
    memory.dephasing_time_s = ma_dephasing_time_s;
    memory.set_combined_efficiency(ma_memory_efficiency);
    memory.temporal_modes = ma_temporal_modes;
    memory.pairs = ma_memory_pairs;
    memory.qnd_efficiency = ma_qnd_efficiency;
    return memory;
}

maqkd::ProtocolParams Scenario::protocol_params() const {
    maqkd::ProtocolParams params;
    params.source_rate_hz = ma_source_rate_mhz * 1e6;
    params.ec_inefficiency = ma_ec_inefficiency;
    params.misalignment_error = ma_misalignment_error;
    params.bsm_success = ma_bsm_success;
    params.pair_emission_prob = ma_pair_emission_prob;
    params.uplink_extra_loss_db = ma_uplink_extra_loss_db;
    return params;
}

void Scenario::validate() const {
    check(!name.empty(), "scenario.name must not be empty");
    check(total_ground_distance_km > 0.0,
          "geometry.total_ground_distance_km violates the > 0 invariant");
    check(altitude_km > 0.0, "geometry.altitude_km violates the > 0 invariant");
    check(nesting_level >= 0 && nesting_level <= 20,
          "geometry.nesting_level violates the 0 <= n <= 20 invariant");
    check(earth_radius_km > 0.0, "geometry.earth_radius_km violates the > 0 invariant");
    check(wavelength_nm > 0.0, "beam.wavelength_nm violates the > 0 invariant");
    check(divergence_urad > 0.0, "beam.divergence_urad violates the > 0 invariant");
    check(m_squared >= 1.0, "beam.m_squared violates the >= 1 invariant");
    check(receiver_radius_m > 0.0, "receiver.radius_m violates the > 0 invariant");
    check(sender_radius_m > 0.0, "sender.radius_m violates the > 0 invariant");
    check(zenith_transmissivity > 0.0 && zenith_transmissivity <= 1.0,
          "atmosphere.zenith_transmissivity violates the (0, 1] invariant");
    check(pointing_sigma_urad >= 0.0, "pointing.sigma_urad violates the >= 0 invariant");
    check_probability(detector_efficiency, "detector.efficiency");
    check_probability(dark_prob_per_window, "detector.dark_prob_per_window");
    check(stray_sky_brightness >= 0.0 && stray_fov_sr >= 0.0 &&
              stray_filter_bandwidth_nm >= 0.0 && stray_window_us >= 0.0,
          "stray.* fields violate the >= 0 invariant");

    check(rep_source_rate_mhz > 0.0, "repeater.source_rate_mhz violates the > 0 invariant");
    check_probability(rep_source_efficiency, "repeater.source_efficiency");
    check_probability(rep_pair_probability, "repeater.pair_probability");
    check_probability(rep_qnd_efficiency, "repeater.qnd_efficiency");
    check_probability(rep_memory_efficiency, "repeater.memory_efficiency");
    check(rep_multimode_modes >= 1, "repeater.multimode_modes violates the >= 1 invariant");

    check(ma_source_rate_mhz > 0.0, "maqkd.source_rate_mhz violates the > 0 invariant");
    check(ma_dephasing_time_s > 0.0, "maqkd.dephasing_time_s violates the > 0 invariant");
    check_probability(ma_memory_efficiency, "maqkd.memory_efficiency");
    check(ma_temporal_modes >= 1, "maqkd.temporal_modes violates the >= 1 invariant");
    check(ma_memory_pairs >= 1, "maqkd.memory_pairs violates the >= 1 invariant");
    check_probability(ma_qnd_efficiency, "maqkd.qnd_efficiency");
    check(ma_ec_inefficiency >= 1.0, "maqkd.ec_inefficiency violates the >= 1 invariant");
    check(ma_misalignment_error >= 0.0 && ma_misalignment_error <= 0.5,
          "maqkd.misalignment_error violates the [0, 0.5] invariant");
    check_probability(ma_bsm_success, "maqkd.bsm_success");
    check_probability(ma_pair_emission_prob, "maqkd.pair_emission_prob");
    check(ma_uplink_extra_loss_db >= 0.0,
          "maqkd.uplink_extra_loss_db violates the >= 0 invariant");

    check(cmp_uplink_tau_s > 0.0 && cmp_downlink_tau_single_s > 0.0 &&
              cmp_downlink_tau_multi_s > 0.0,
          "compare.*_tau_s violates the > 0 invariant");
    check(cmp_temporal_modes >= 1 && cmp_memory_pairs >= 1,
          "compare.temporal_modes and compare.memory_pairs violate the >= 1 invariant");

    check(sweep_points >= 1, "sweep.points violates the >= 1 invariant");
    check(sweep_min <= sweep_max, "sweep.min must not exceed sweep.max");
    check(sweep_scale == SweepScale::Linear || sweep_min > 0.0,
          "sweep.scale=log requires sweep.min > 0");
    check(map_eta_points >= 1, "map.eta_points violates the >= 1 invariant");
    check(map_eta_min <= map_eta_max, "map.eta_min must not exceed map.eta_max");
    check(map_eta_min >= 0.0 && map_eta_max <= 1.0,
          "map.eta_* violates the [0, 1] invariant");
    for (const double div : linkbudget_divergences_urad) {
        check(div > 0.0, "linkbudget.divergences_urad violates the > 0 invariant");
    }

    static const std::vector<std::string> sweepables = {
        "total_distance_km", "divergence_urad", "memory_efficiency",
        "tau_s",             "slant_range_km",  "intersat_range_km"};
    check(std::find(sweepables.begin(), sweepables.end(), sweep_variable) != sweepables.end(),
          "sweep.variable '" + sweep_variable + "' is not a known sweep axis");
}

std::string Scenario::canonical_string() const {
    std::string out;
    for (const auto& [key, field] : registry()) {
        out += key;
        out += '=';
        out += field.get(*this);
        out += '\n';
    }
    return out;
}

void Scenario::set(const std::string& key, const std::string& value) {
    const auto& fields = registry();
    const auto it = fields.find(key);
    if (it == fields.end()) {
        throw ValidationError("unknown scenario key '" + key + "'");
    }
    try {
        it->second.set(*this, value);
    } catch (const ParseError&) {
        throw ParseError("value for '" + key + "' could not be parsed: '" + value + "'");
    }
}

std::vector<std::string> schema_keys() {
    std::vector<std::string> keys;
    for (const auto& [key, field] : registry()) {
        keys.push_back(key);
    }
    return keys;
}

Scenario parse_scenario(const std::string& text, Scenario base) {
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto strip = [](std::string& s) {
            const auto begin = s.find_first_not_of(" \t\r");
            const auto end = s.find_last_not_of(" \t\r");
            s = begin == std::string::npos ? "" : s.substr(begin, end - begin + 1);
        };
        strip(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(line_number) +
                             ": expected 'key = value', got '" + line + "'");
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        strip(key);
        strip(value);
        if (key.empty() || value.empty()) {
            throw ParseError("line " + std::to_string(line_number) +
                             ": empty key or value in '" + line + "'");
        }
        base.set(key, value);
    }
    base.validate();
    return base;
}

Scenario load_scenario(const std::string& path, Scenario base) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), std::move(base));
}

table::ResultTable run(const Scenario& scenario, int jobs) {
    scenario.validate();
    switch (scenario.mode) {
        case RunMode::LinkBudget: return run_link_budget(scenario, jobs);
        case RunMode::RepeaterSweep: return run_repeater_sweep(scenario, jobs);
        case RunMode::MaqkdCompare: return run_maqkd_compare(scenario, jobs);
        case RunMode::MaqkdMap: return run_maqkd_map(scenario, jobs);
    }
    throw Error("unreachable run mode");
}

table::ResultTable reproduce(const std::string& figure_id, int jobs) {
    return run(preset(figure_id), jobs);
}

std::vector<double> make_grid(double min, double max, int points, SweepScale scale) {
    if (points < 1) {
        throw DomainError("grid needs at least one point");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    if (points == 1) {
        grid.push_back(min);
        return grid;
    }
    if (scale == SweepScale::Linear) {
        const double step = (max - min) / static_cast<double>(points - 1);
        for (int i = 0; i < points; ++i) {
            grid.push_back(i == points - 1 ? max : min + step * i);
        }
    } else {
        const double log_min = std::log(min);
        const double step = (std::log(max) - log_min) / static_cast<double>(points - 1);
        for (int i = 0; i < points; ++i) {
            grid.push_back(i == points - 1 ? max : std::exp(log_min + step * i));
        }
    }
    return grid;
}

}  // namespace qlink::scenario
