#include "prandtl/vm/run_record.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "prandtl/error.hpp"

namespace prandtl::vm {

namespace {
constexpr const char* kColumns = "x,tau_wall,min_uyy,max_uyy,continuation_margin,dx";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::separated: return "separated";
        case Termination::reached_x_end: return "reached_x_end";
        case Termination::step_underflow: return "step_underflow";
        case Termination::invariant_violation: return "invariant_violation";
    }
    return "unknown";
}

Termination termination_from_string(const std::string& s) {
    for (auto t : {Termination::separated, Termination::reached_x_end, Termination::step_underflow,
                   Termination::invariant_violation})
        if (s == to_string(t)) return t;
    throw ConfigError("unknown termination status '" + s + "'");
}

std::vector<double> RunRecord::xs() const {
    std::vector<double> v;
    v.reserve(stations.size());
    for (const auto& s : stations) v.push_back(s.x);
    return v;
}

std::vector<double> RunRecord::taus() const {
    std::vector<double> v;
    v.reserve(stations.size());
    for (const auto& s : stations) v.push_back(s.tau_wall);
    return v;
}

void write_record_csv(const RunRecord& record, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write run record " + path.string());
    out << "# solver=" << record.solver << '\n';
    out << "# termination=" << to_string(record.termination) << '\n';
    out << "# scenario=" << record.scenario_hash << '\n';
    if (!record.message.empty()) out << "# message=" << record.message << '\n';
    out << kColumns << '\n';
    char buf[256];
    for (const auto& s : record.stations) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.x, s.tau_wall, s.min_uyy, s.max_uyy,
                      s.continuation_margin, s.dx);
        out << buf;
    }
}

RunRecord read_record_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open run record " + path.string());
    RunRecord rec;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string value = line.substr(eq + 1);
            if (key == "solver") rec.solver = value;
            else if (key == "termination") rec.termination = termination_from_string(value);
            else if (key == "scenario") rec.scenario_hash = value;
            else if (key == "message") rec.message = value;
            continue;
        }
        if (!header_seen) {
            if (line != kColumns) throw ConfigError("run record " + path.string() + ": unexpected column header");
            header_seen = true;
            continue;
        }
        Station s;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &s.x, &s.tau_wall, &s.min_uyy, &s.max_uyy,
                        &s.continuation_margin, &s.dx) != 6)
            throw ConfigError("run record " + path.string() + ": malformed row '" + line + "'");
        rec.stations.push_back(s);
    }
    if (!header_seen) throw ConfigError("run record " + path.string() + ": missing column header");
    return rec;
}

}  // namespace prandtl::vm
