#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlink/channel.hpp"
#include "qlink/geometry.hpp"
#include "qlink/maqkd.hpp"
#include "qlink/repeater.hpp"
#include "qlink/table.hpp"

namespace qlink::scenario {

enum class RunMode { LinkBudget, RepeaterSweep, MaqkdCompare, MaqkdMap };
enum class SweepScale { Linear, Log };

/// Flat, fully-validated run configuration. Every field maps 1:1 to a
/// `section.key` in the scenario file schema (see README); presets are
/// plain Scenario values bundled with the binary.
struct Scenario {
    std::string name = "unnamed";
    RunMode mode = RunMode::LinkBudget;

    // geometry
    double total_ground_distance_km = 1000.0;
    double altitude_km = 400.0;
    int nesting_level = 3;
    geometry::Architecture architecture = geometry::Architecture::FullSpace;
    double earth_radius_km = 6371.0;

    // optics
    double wavelength_nm = 780.0;
    double divergence_urad = 10.0;
    double m_squared = 1.0;
    double receiver_radius_m = 0.5;
    double sender_radius_m = 0.15;  // informational; divergence already encodes the optics
    double zenith_transmissivity = 0.8;
    bool pointing_enabled = false;
    double pointing_sigma_urad = 0.0;
    double detector_efficiency = 0.9;
    double dark_prob_per_window = 1e-6;
    double stray_sky_brightness = 0.0;
    double stray_fov_sr = 0.0;
    double stray_filter_bandwidth_nm = 0.0;
    double stray_window_us = 1.0;

    // repeater comparison block
    double rep_source_rate_mhz = 20.0;
    double rep_source_efficiency = 1.0;
    double rep_pair_probability = 0.01;
    double rep_qnd_efficiency = 0.5;
    double rep_memory_efficiency = 0.9;  // combined read*write
    std::int64_t rep_multimode_modes = 100;

    // MA-QKD block
    std::string maqkd_protocol = "downlink";
    double ma_source_rate_mhz = 20.0;
    double ma_dephasing_time_s = 5e-3;
    double ma_memory_efficiency = 0.8;  // combined read*write
    std::int64_t ma_temporal_modes = 1;
    std::int64_t ma_memory_pairs = 1;
    double ma_qnd_efficiency = 0.5;
    double ma_ec_inefficiency = 1.16;
    double ma_misalignment_error = 0.015;
    double ma_bsm_success = 0.5;
    double ma_pair_emission_prob = 0.005;
    double ma_uplink_extra_loss_db = 23.0;

    // protocol-comparison sweep columns
    double cmp_uplink_tau_s = 5e-3;
    double cmp_downlink_tau_single_s = 7.5;
    double cmp_downlink_tau_multi_s = 0.1;
    std::int64_t cmp_temporal_modes = 1000;
    std::int64_t cmp_memory_pairs = 100;

    // sweep axis
    std::string sweep_variable = "total_distance_km";
    double sweep_min = 2000.0;
    double sweep_max = 20000.0;
    int sweep_points = 50;
    SweepScale sweep_scale = SweepScale::Linear;

    // second axis of rate maps
    double map_eta_min = 0.1;
    double map_eta_max = 1.0;
    int map_eta_points = 50;

    // link-budget table curves
    std::vector<double> linkbudget_divergences_urad{1.0, 5.0, 10.0};

    geometry::EarthModel earth() const { return {earth_radius_km}; }
    geometry::OrbitConfig orbit() const { return {altitude_km}; }
    channel::ChannelStack channel_stack() const;
    repeater::RepeaterSweepConfig repeater_sweep_config() const;
    maqkd::MemoryModel memory_model() const;
    maqkd::ProtocolParams protocol_params() const;

    /// Range checks for every field; throws ValidationError naming the
    /// violated invariant.
    void validate() const;

    /// Sorted `key=value` lines of the effective configuration; the
    /// scenario hash in table metadata is the FNV-1a of this string.
    std::string canonical_string() const;

    /// Applies one `section.key = value` assignment. Unknown keys raise
    /// ValidationError, malformed values ParseError.
    void set(const std::string& key, const std::string& value);
};

/// All keys of the scenario schema (sorted), for docs and validation.
std::vector<std::string> schema_keys();

/// Parses scenario text (key = value lines, '#' comments) on top of a base
/// configuration, then validates.
Scenario parse_scenario(const std::string& text, Scenario base = Scenario{});

/// Reads and parses a scenario file. Missing file raises ParseError.
Scenario load_scenario(const std::string& path, Scenario base = Scenario{});

/// Bundled preset by name ("fig3a", ..., "table1-uplink"). Throws
/// UnknownFigure for unknown names.
Scenario preset(const std::string& name);

std::vector<std::string> preset_names();

/// Evaluates the scenario into its result table. Pure: identical
/// scenarios give byte-identical serializations. `jobs` parallelizes the
/// sweep without affecting output order.
table::ResultTable run(const Scenario& scenario, int jobs = 1);

/// Runs the bundled preset for one of the reproducible figures.
table::ResultTable reproduce(const std::string& figure_id, int jobs = 1);

/// Evenly spaced grid including both endpoints.
std::vector<double> make_grid(double min, double max, int points, SweepScale scale);

}  // namespace qlink::scenario
