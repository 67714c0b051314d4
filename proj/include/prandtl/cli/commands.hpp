#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace prandtl::cli {

enum ExitCode : int { exit_ok = 0, exit_numerical = 1, exit_usage = 2 };

struct ValidateArgs {
    std::optional<std::filesystem::path> config;  // optional [validate] overrides
    bool wrong_stencil = false;                    // test hook
};
int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err);

struct RunArgs {
    std::filesystem::path config;
    std::filesystem::path output;
    bool vm_only = false;
    std::optional<std::vector<double>> snapshots;  // replaces march.snapshots
};
int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);

struct SweepArgs {
    std::filesystem::path config;
    std::filesystem::path output;
    bool vm_only = false;
    std::size_t parallel = 1;
};
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);

struct ReportArgs {
    std::vector<std::filesystem::path> analyses;
};
int cmd_report(const ReportArgs& args, std::ostream& out, std::ostream& err);

}  // namespace prandtl::cli
