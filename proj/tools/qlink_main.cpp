// qlink — link budgets, repeater timing and MA-QKD key rates for
// satellite quantum communication, exported as CSV/JSON tables.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qlink/errors.hpp"
#include "qlink/scenario.hpp"
#include "qlink/version.hpp"

namespace {

struct CommonOptions {
    std::string scenario_path;
    std::string preset_name;
    std::string out_path;
    std::string format = "csv";
    std::vector<std::string> overrides;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--scenario", opt.scenario_path, "scenario file (key = value lines)");
    cmd->add_option("--preset", opt.preset_name, "bundled preset to start from");
    cmd->add_option("--out", opt.out_path, "output path (stdout when omitted)");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--set", opt.overrides, "override, e.g. --set beam.divergence_urad=5");
    cmd->add_option("--jobs", opt.jobs, "parallel sweep workers")->check(CLI::PositiveNumber);
}

qlink::scenario::Scenario assemble(const CommonOptions& opt,
                                   qlink::scenario::RunMode default_mode) {
    qlink::scenario::Scenario base;
    base.mode = default_mode;
    if (!opt.preset_name.empty()) {
        base = qlink::scenario::preset(opt.preset_name);
    }
    if (!opt.scenario_path.empty()) {
        base = qlink::scenario::load_scenario(opt.scenario_path, base);
    }
    for (const auto& assignment : opt.overrides) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos) {
            throw qlink::ParseError("--set expects key=value, got '" + assignment + "'");
        }
        base.set(assignment.substr(0, eq), assignment.substr(eq + 1));
    }
    base.validate();
    return base;
}

int emit(const qlink::table::ResultTable& result, const CommonOptions& opt) {
    const std::string payload = opt.format == "json" ? result.to_json() : result.to_csv();
    if (opt.out_path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "qlink: cannot write '" << opt.out_path << "'\n";
        return 1;
    }
    out << payload;
    return 0;
}

int run_mode_command(const CommonOptions& opt, qlink::scenario::RunMode mode) {
    const auto scenario = assemble(opt, mode);
    if (scenario.mode != mode) {
        throw qlink::ValidationError("scenario run.mode does not match the subcommand");
    }
    return emit(qlink::scenario::run(scenario, opt.jobs), opt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"satellite quantum link performance tables"};
    app.set_version_flag("--version", std::string("qlink ") + qlink::kToolVersion);
    app.require_subcommand(1);

    CommonOptions link_opt, rep_opt, qkd_opt, repro_opt, val_opt;
    std::string figure_id;

    auto* link_cmd = app.add_subcommand("link-budget", "per-hop optical loss tables");
    add_common(link_cmd, link_opt);

    auto* rep_cmd = app.add_subcommand("repeater", "entanglement distribution time sweeps");
    add_common(rep_cmd, rep_opt);

    auto* qkd_cmd = app.add_subcommand("maqkd", "secret key rate sweeps and maps");
    add_common(qkd_cmd, qkd_opt);

    auto* repro_cmd = app.add_subcommand("reproduce", "run a bundled figure preset");
    repro_cmd->add_option("figure", figure_id, "figure id, e.g. fig3a or fig5")->required();
    add_common(repro_cmd, repro_opt);

    auto* val_cmd = app.add_subcommand("validate", "load a scenario and report problems");
    add_common(val_cmd, val_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (link_cmd->parsed()) {
            return run_mode_command(link_opt, qlink::scenario::RunMode::LinkBudget);
        }
        if (rep_cmd->parsed()) {
            return run_mode_command(rep_opt, qlink::scenario::RunMode::RepeaterSweep);
        }
        if (qkd_cmd->parsed()) {
            const auto scenario = assemble(qkd_opt, qlink::scenario::RunMode::MaqkdCompare);
            if (scenario.mode != qlink::scenario::RunMode::MaqkdCompare &&
                scenario.mode != qlink::scenario::RunMode::MaqkdMap) {
                throw qlink::ValidationError("maqkd expects run.mode maqkd-compare or maqkd-map");
            }
            return emit(qlink::scenario::run(scenario, qkd_opt.jobs), qkd_opt);
        }
        if (repro_cmd->parsed()) {
            // overrides on top of the preset, e.g. a coarser grid
            CommonOptions opt = repro_opt;
            opt.preset_name = figure_id;
            const auto scenario = assemble(opt, qlink::scenario::RunMode::LinkBudget);
            return emit(qlink::scenario::run(scenario, opt.jobs), opt);
        }
        if (val_cmd->parsed()) {
            const auto scenario = assemble(val_opt, qlink::scenario::RunMode::LinkBudget);
            std::cout << "ok: scenario '" << scenario.name << "' is valid\n";
            return 0;
        }
    } catch (const qlink::UnknownFigure& e) {
        std::cerr << "qlink: " << e.what() << "\n";
        return 4;
    } catch (const qlink::ParseError& e) {
        std::cerr << "qlink: " << e.what() << "\n";
        return 3;
    } catch (const qlink::ValidationError& e) {
        std::cerr << "qlink: " << e.what() << "\n";
        return 2;
    } catch (const qlink::Error& e) {
        std::cerr << "qlink: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
