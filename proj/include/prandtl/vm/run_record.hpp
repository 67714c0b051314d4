#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "prandtl/vm/state.hpp"

namespace prandtl::vm {

enum class Termination { separated, reached_x_end, step_underflow, invariant_violation };

[[nodiscard]] const char* to_string(Termination t);
[[nodiscard]] Termination termination_from_string(const std::string& s);

struct Station {
    double x = 0.0;
    double tau_wall = 0.0;  // u_y(x, 0)
    double min_uyy = 0.0;
    double max_uyy = 0.0;
    double continuation_margin = 0.0;
    double dx = 0.0;
};

/// Per-station history of one march. Shared by both solvers.
struct RunRecord {
    std::vector<Station> stations;
    Termination termination = Termination::reached_x_end;
    std::string solver;         // "vm" or "phys"
    std::string scenario_hash;  // identifies matched scenarios
    std::string message;
    std::vector<VMState> snapshots;

    [[nodiscard]] double tau0() const { return stations.empty() ? 0.0 : stations.front().tau_wall; }
    [[nodiscard]] std::vector<double> xs() const;
    [[nodiscard]] std::vector<double> taus() const;
};

/// CSV with '#'-prefixed metadata lines, then x,tau_wall,min_uyy,max_uyy,continuation_margin,dx.
void write_record_csv(const RunRecord& record, const std::filesystem::path& path);
[[nodiscard]] RunRecord read_record_csv(const std::filesystem::path& path);

}  // namespace prandtl::vm
