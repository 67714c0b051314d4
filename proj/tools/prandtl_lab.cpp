#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "prandtl/cli/commands.hpp"
#include "prandtl/cli/config.hpp"
#include "prandtl/error.hpp"

int main(int argc, char** argv) {
    using namespace prandtl::cli;
    CLI::App app{"Steady boundary-layer separation lab"};
    app.require_subcommand(1);

    ValidateArgs va;
    std::string va_config;
    auto* validate = app.add_subcommand("validate", "run the built-in validation battery");
    validate->add_option("--config", va_config, "optional [validate] overrides");
    validate->add_flag("--inject-wrong-stencil", va.wrong_stencil, "test hook: perturb the diffusion operator");

    RunArgs ra;
    std::string ra_snaps;
    auto* run = app.add_subcommand("run", "run one scenario on both solvers and analyse it");
    run->add_option("config", ra.config, "scenario config")->required();
    run->add_option("output", ra.output, "output directory")->required();
    run->add_flag("--vm-only", ra.vm_only, "skip the physical-variable solver");
    run->add_option("--snapshots", ra_snaps, "comma-separated x values for snapshot files");

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "cartesian sweep over [sweep] lists");
    sweep->add_option("config", sa.config, "scenario config with a [sweep] section")->required();
    sweep->add_option("output", sa.output, "output directory")->required();
    sweep->add_flag("--vm-only", sa.vm_only, "skip the physical-variable solver");
    sweep->add_option("--parallel", sa.parallel, "concurrent scenarios");

    ReportArgs rep;
    auto* report = app.add_subcommand("report", "scoreboard from analysis.json files");
    report->add_option("analyses", rep.analyses, "analysis documents")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*validate) {
            if (!va_config.empty()) va.config = va_config;
            return cmd_validate(va, std::cout, std::cerr);
        }
        if (*run) {
            if (run->count("--snapshots")) ra.snapshots = parse_number_list(ra_snaps, "--snapshots");
            return cmd_run(ra, std::cout, std::cerr);
        }
        if (*sweep) return cmd_sweep(sa, std::cout, std::cerr);
        return cmd_report(rep, std::cout, std::cerr);
    } catch (const prandtl::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
