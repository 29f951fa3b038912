#include "qlink/scenario.hpp"

#include "qlink/errors.hpp"

namespace qlink::scenario {

namespace {

/// Shared optics of the repeater comparison tables: 5 urad beams into
/// 0.5 m receivers, detectors at 0.9, pair sources at 20 MHz.
Scenario repeater_base() {
    Scenario s;
    s.mode = RunMode::RepeaterSweep;
    s.total_ground_distance_km = 20000.0;
    s.nesting_level = 3;
    s.divergence_urad = 5.0;
    s.receiver_radius_m = 0.5;
    s.detector_efficiency = 0.9;
    s.rep_source_rate_mhz = 20.0;
    s.rep_source_efficiency = 1.0;
    s.rep_qnd_efficiency = 0.5;
    s.rep_memory_efficiency = 0.9;
    s.rep_pair_probability = 0.01;
    s.rep_multimode_modes = 100;
    return s;
}

/// Shared MA-QKD table settings: 400 km orbit, 10 urad beams, 0.5 m
/// ground receivers, 0.7 detectors, 20 MHz sources, 80% memories.
Scenario maqkd_base() {
    Scenario s;
    s.altitude_km = 400.0;
    s.divergence_urad = 10.0;
    s.receiver_radius_m = 0.5;
    s.sender_radius_m = 0.15;
    s.detector_efficiency = 0.7;
    s.ma_source_rate_mhz = 20.0;
    s.ma_memory_efficiency = 0.8;
    return s;
}

}  // namespace

Scenario preset(const std::string& name) {
    if (name == "fig3a") {
        Scenario s = repeater_base();
        s.name = "fig3a";
        s.sweep_variable = "total_distance_km";
        s.sweep_min = 2000.0;
        s.sweep_max = 20000.0;
        s.sweep_points = 50;
        s.sweep_scale = SweepScale::Linear;
        return s;
    }
    if (name == "fig3b") {
        Scenario s = repeater_base();
        s.name = "fig3b";
        s.sweep_variable = "divergence_urad";
        s.sweep_min = 1.0;
        s.sweep_max = 10.0;
        s.sweep_points = 50;
        s.sweep_scale = SweepScale::Linear;
        return s;
    }
    if (name == "fig3c") {
        Scenario s = repeater_base();
        s.name = "fig3c";
        // 50 points over [0.3, 1.0] land exactly on 0.5 and 0.9
        s.sweep_variable = "memory_efficiency";
        s.sweep_min = 0.3;
        s.sweep_max = 1.0;
        s.sweep_points = 50;
        s.sweep_scale = SweepScale::Linear;
        return s;
    }
    if (name == "fig4a") {
        Scenario s = maqkd_base();
        s.name = "fig4a";
        s.mode = RunMode::MaqkdMap;
        s.maqkd_protocol = "uplink";
        s.total_ground_distance_km = 1000.0;
        s.sweep_variable = "tau_s";
        s.sweep_min = 1e-4;
        s.sweep_max = 1.0;
        s.sweep_points = 50;
        s.sweep_scale = SweepScale::Log;
        s.map_eta_min = 0.1;
        s.map_eta_max = 1.0;
        s.map_eta_points = 50;
        return s;
    }
    if (name == "fig4b" || name == "fig4c") {
        Scenario s = maqkd_base();
        s.name = name;
        s.mode = RunMode::MaqkdMap;
        s.maqkd_protocol = "downlink";
        s.total_ground_distance_km = 1000.0;
        s.ma_temporal_modes = 1000;
        s.ma_memory_pairs = name == "fig4c" ? 100 : 1;
        s.sweep_variable = "tau_s";
        s.sweep_min = name == "fig4c" ? 1e-4 : 1e-2;
        s.sweep_max = name == "fig4c" ? 10.0 : 100.0;
        s.sweep_points = 50;
        s.sweep_scale = SweepScale::Log;
        s.map_eta_min = 0.1;
        s.map_eta_max = 1.0;
        s.map_eta_points = 50;
        return s;
    }
    if (name == "fig5") {
        Scenario s = maqkd_base();
        s.name = "fig5";
        s.mode = RunMode::MaqkdCompare;
        s.sweep_variable = "total_distance_km";
        s.sweep_min = 100.0;
        s.sweep_max = 3000.0;
        s.sweep_points = 50;
        s.sweep_scale = SweepScale::Linear;
        s.cmp_uplink_tau_s = 5e-3;
        s.cmp_downlink_tau_single_s = 7.5;
        s.cmp_downlink_tau_multi_s = 0.1;
        s.cmp_temporal_modes = 1000;
        s.cmp_memory_pairs = 100;
        return s;
    }
    if (name == "fig6a") {
        Scenario s = maqkd_base();
        s.name = "fig6a";
        s.mode = RunMode::LinkBudget;
        s.sweep_variable = "slant_range_km";
        s.sweep_min = 400.0;
        s.sweep_max = 2200.0;
        s.sweep_points = 50;
        s.sweep_scale = SweepScale::Linear;
        s.linkbudget_divergences_urad = {1.0, 5.0, 10.0};
        return s;
    }
    if (name == "fig6b") {
        Scenario s = maqkd_base();
        s.name = "fig6b";
        s.mode = RunMode::LinkBudget;
        s.sweep_variable = "intersat_range_km";
        s.sweep_min = 100.0;
        s.sweep_max = 4000.0;
        s.sweep_points = 50;
        s.sweep_scale = SweepScale::Linear;
        s.linkbudget_divergences_urad = {1.0, 5.0, 10.0};
        return s;
    }
    if (name == "table1-downlink") {
        Scenario s = maqkd_base();
        s.name = "table1-downlink";
        s.mode = RunMode::MaqkdMap;
        s.maqkd_protocol = "downlink";
        s.total_ground_distance_km = 1000.0;
        s.ma_dephasing_time_s = 7.5;
        s.ma_temporal_modes = 1000;
        s.ma_memory_pairs = 1;
        s.sweep_variable = "tau_s";
        s.sweep_min = 1e-2;
        s.sweep_max = 100.0;
        s.sweep_points = 50;
        s.sweep_scale = SweepScale::Log;
        return s;
    }
    if (name == "table1-uplink") {
        Scenario s = maqkd_base();
        s.name = "table1-uplink";
        s.mode = RunMode::MaqkdMap;
        s.maqkd_protocol = "uplink";
        s.total_ground_distance_km = 1000.0;
        s.ma_dephasing_time_s = 5e-3;
        s.sweep_variable = "tau_s";
        s.sweep_min = 1e-4;
        s.sweep_max = 1.0;
        s.sweep_points = 50;
        s.sweep_scale = SweepScale::Log;
        return s;
    }
    throw UnknownFigure("no bundled preset named '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig4c",
            "fig5",  "fig6a", "fig6b", "table1-downlink", "table1-uplink"};
}

}  // namespace qlink::scenario
