#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prandtl/cli/config.hpp"
#include "prandtl/core/outer_flow.hpp"
#include "prandtl/core/wall_profile.hpp"
#include "prandtl/vm/run_record.hpp"

namespace prandtl::cli {

struct FlowSettings {
    enum class Mode { constant_adverse, polynomial, neutral } mode = Mode::constant_adverse;
    double gradient = 1.0;                                   // constant_adverse
    std::vector<double> pressure_coefficients{0.0, 1.0};     // polynomial, p(x) = sum c_k x^k
    double x0 = 16.0;                                        // adverse modes
    double u0 = 1.0;                                         // neutral
};

struct ProfileSettings {
    enum class Mode { file, generated, tapered, blasius } mode = Mode::tapered;
    std::string path;
    double slope = 0.1;
    double blend_scale = 4.0;
    double x_virtual = 1.0;  // blasius
    double y_max = 0.0;      // 0 selects the construction default
    std::size_t points = 8001;
};

struct GridSettings {
    std::size_t intervals = 1024;
    double grading = 2.0;
    double psi_max = 0.0;  // 0 selects auto_psi_max
    double psi_padding = 1.5;
};

struct MarchSettings {
    double dx0 = 1e-3;
    double dx_min = 1e-12;
    double tau_stop_rel = 0.01;
    double x_end = 0.0;
    std::vector<double> snapshot_xs;
    std::size_t snapshot_stride = 4;
    double tau_change_max = 0.02;
    bool picard = true;
    int picard_max = 8;
    double picard_tol = 1e-10;
};

struct PhysSettings {
    bool enabled = true;
    std::size_t y_points = 2048;
    double y_max = 0.0;
    double thickness_factor = 3.0;
    double dx0 = 0.0;             // 0 copies march.dx0
    double tau_change_max = 0.0;  // 0 copies march.tau_change_max
};

struct AnalysisSettings {
    double tail_fraction = 0.5;
    double window_lo = 1e-3;  // window in (X* - x) / X*
    double window_hi = 5e-2;
    double B = 4.0;
    double epsilon0 = 0.0;    // 0 selects mu^2 / (2 B)
    double mu = 0.5;
    double delta = 1.0;
    std::vector<double> collapse_fractions{1e-2, 5e-3, 2.5e-3};  // lambda / X*
    double trace_probe = 1e-4;
};

struct ScenarioConfig {
    std::string label = "scenario";
    FlowSettings flow;
    ProfileSettings profile;
    GridSettings grid;
    MarchSettings march;
    PhysSettings phys;
    AnalysisSettings analysis;

    /// Reads and validates every known key; unknown keys, bad values and conflicting modes
    /// raise ConfigError.
    static ScenarioConfig from_config(const Config& config);
    static ScenarioConfig load(const std::filesystem::path& path);

    /// Normalised key = value text of all settings (stable across formatting of the input).
    [[nodiscard]] std::string canonical() const;
    /// FNV-1a of canonical(), in hex.
    [[nodiscard]] std::string hash() const;

    [[nodiscard]] core::OuterFlow make_flow() const;
    [[nodiscard]] core::WallProfile make_profile(const core::OuterFlow& flow) const;
};

[[nodiscard]] std::uint64_t fnv1a(const std::string& text);

/// Keys recognised by ScenarioConfig::from_config, with sections.
[[nodiscard]] const std::vector<std::string>& known_keys();

struct ScenarioResult {
    ScenarioConfig config;
    core::OuterFlow flow;
    core::WallProfile profile;
    vm::RunRecord vm;
    std::optional<vm::RunRecord> phys;
    nlohmann::json analysis;
    [[nodiscard]] bool clean() const;  // every solver separated or reached x_end
};

[[nodiscard]] ScenarioResult run_scenario(const ScenarioConfig& config, bool vm_only = false);

/// The analysis document for a finished scenario.
[[nodiscard]] nlohmann::json analyze(const ScenarioConfig& config, const core::OuterFlow& flow,
                                     const core::WallProfile& profile, const vm::RunRecord& vm,
                                     const vm::RunRecord* phys);

/// run_vm.csv, run_phys.csv, analysis.json, scenario.cfg and snapshots/snapshot_NNN.txt.
void write_outputs(const ScenarioResult& result, const std::filesystem::path& dir);

}  // namespace prandtl::cli
