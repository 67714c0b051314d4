#include "prandtl/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "prandtl/cli/config.hpp"
#include "prandtl/cli/scenario.hpp"
#include "prandtl/cli/validate.hpp"
#include "prandtl/error.hpp"

namespace prandtl::cli {

using nlohmann::json;

namespace {

std::string fmt_g(double v, int digits = 6) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string cell(const json& v, int digits = 6) {
    if (v.is_null()) return "";
    if (v.is_number()) return fmt_g(v.get<double>(), digits);
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

}  // namespace

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
    BatteryOptions opt;
    try {
        if (args.config) {
            const auto c = Config::load(*args.config);
            for (const auto& [k, v] : c.values())
                if (k != "validate.stationarity_steps" && k != "validate.operator_scale")
                    throw ConfigError(c.origin() + ": unknown key '" + k + "'");
            opt.stationarity_steps = c.get_size("validate.stationarity_steps", opt.stationarity_steps);
            opt.operator_scale = c.get_double("validate.operator_scale", opt.operator_scale);
            if (!(opt.operator_scale > 0.0)) throw ConfigError(c.origin() + ": validate.operator_scale must be positive");
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    if (args.wrong_stencil) opt.operator_scale *= 1.02;

    const auto checks = run_validation_battery(opt);
    bool all = true;
    out << std::left << std::setw(30) << "check" << std::setw(8) << "result" << std::setw(14) << "measured"
        << std::setw(14) << "threshold" << "detail\n";
    for (const auto& c : checks) {
        all = all && c.passed;
        out << std::left << std::setw(30) << c.name << std::setw(8) << (c.passed ? "PASS" : "FAIL") << std::setw(14)
            << fmt_g(c.measured, 4) << std::setw(14) << fmt_g(c.threshold, 4) << c.detail << "\n";
    }
    out << (all ? "all checks passed" : "validation FAILED") << " (" << checks.size() << " checks)\n";
    return all ? exit_ok : exit_numerical;
}

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
    ScenarioConfig cfg;
    try {
        auto c = Config::load(args.config);
        cfg = ScenarioConfig::from_config(c);
        if (args.snapshots) {
            for (double x : *args.snapshots)
                if (!(x > 0.0)) throw ConfigError("--snapshots values must be positive");
            cfg.march.snapshot_xs = *args.snapshots;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        const auto result = run_scenario(cfg, args.vm_only);
        write_outputs(result, args.output);
        out << cfg.label << ": vm " << vm::to_string(result.vm.termination);
        if (result.phys) out << ", phys " << vm::to_string(result.phys->termination);
        const auto& xs = result.analysis["xstar"];
        out << ", xstar " << (xs.is_null() ? std::string("n/a") : fmt_g(xs.get<double>(), 8)) << "\n";
        if (!result.clean()) {
            err << "error: run did not terminate cleanly: " << result.vm.message << "\n";
            return exit_numerical;
        }
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
    struct Job {
        double slope = 0.0, x0 = 0.0;
        std::size_t N = 0;
        std::string name;
        ScenarioConfig cfg;
    };
    std::vector<Job> jobs;
    try {
        if (args.parallel == 0) throw ConfigError("--parallel must be at least 1");
        const auto base = Config::load(args.config);
        if (!base.has("sweep.slopes") && !base.has("sweep.x0s") && !base.has("sweep.Ns"))
            throw ConfigError(base.origin() + ": no [sweep] lists (slopes, x0s, Ns) given");
        const auto base_cfg = ScenarioConfig::from_config(base);
        auto read_list = [&](const char* key, double fallback) {
            auto v = base.get_list(key, {fallback});
            if (v.empty()) throw ConfigError(base.origin() + ": " + key + " is empty");
            return v;
        };
        const auto slopes = read_list("sweep.slopes", base_cfg.profile.slope);
        const auto x0s = read_list("sweep.x0s", base_cfg.flow.x0);
        const auto ns = read_list("sweep.Ns", static_cast<double>(base_cfg.grid.intervals));
        for (double s : slopes)
            for (double x0 : x0s)
                for (double n : ns) {
                    Config c = base;
                    if (base.has("sweep.slopes")) c.set("profile.slope", fmt_g(s, 17));
                    if (base.has("sweep.x0s")) c.set("flow.x0", fmt_g(x0, 17));
                    if (base.has("sweep.Ns")) c.set("grid.N", fmt_g(n, 17));
                    Job j;
                    j.cfg = ScenarioConfig::from_config(c);
                    j.slope = s;
                    j.x0 = x0;
                    j.N = j.cfg.grid.intervals;
                    j.name = "slope_" + fmt_g(s) + "_x0_" + fmt_g(x0) + "_N_" + std::to_string(j.N);
                    j.cfg.label = base_cfg.label + "/" + j.name;
                    jobs.push_back(std::move(j));
                }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    struct Outcome {
        bool ok = false;
        std::string reason;
        json analysis;
    };
    std::vector<Outcome> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            Outcome o;
            try {
                const auto r = run_scenario(jobs[i].cfg, args.vm_only);
                write_outputs(r, args.output / jobs[i].name);
                o.analysis = r.analysis;
                o.ok = r.clean();
                if (!o.ok) o.reason = r.vm.message.empty() ? std::string(vm::to_string(r.vm.termination)) : r.vm.message;
            } catch (const std::exception& e) {
                o.reason = e.what();
            }
            {
                std::lock_guard<std::mutex> lock(log_mutex);
                out << jobs[i].name << ": " << (o.ok ? "ok" : "FAILED " + o.reason) << "\n";
            }
            results[i] = std::move(o);
        }
    };
    {
        std::vector<std::thread> pool;
        const std::size_t n = std::min(args.parallel, jobs.size());
        for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::error_code ec;
    std::filesystem::create_directories(args.output, ec);
    std::ofstream summary(args.output / "sweep_summary.csv");
    std::ofstream failures(args.output / "sweep_failures.csv");
    if (!summary || !failures) {
        err << "error: cannot write sweep summary in " << args.output.string() << "\n";
        return exit_usage;
    }
    summary << "slope,x0,N,xstar,alpha,C_estimate,max_ratio_band\n";
    failures << "slope,x0,N,reason\n";
    std::size_t good = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& j = jobs[i];
        const auto& o = results[i];
        const std::string key = fmt_g(j.slope, 12) + "," + fmt_g(j.x0, 12) + "," + std::to_string(j.N);
        if (!o.ok) {
            std::string reason = o.reason;
            std::replace(reason.begin(), reason.end(), ',', ';');
            std::replace(reason.begin(), reason.end(), '\n', ' ');
            failures << key << "," << reason << "\n";
            continue;
        }
        ++good;
        const auto& a = o.analysis;
        summary << key << "," << cell(a["xstar"], 17) << "," << cell(a["alpha"], 17) << "," << cell(a["C_estimate"], 17)
                << "," << cell(a["scan_band"], 17) << "\n";
    }
    out << good << " of " << jobs.size() << " scenarios succeeded\n";
    return good > 0 ? exit_ok : exit_numerical;
}

namespace {

void check_schema(const json& a, const std::string& where) {
    for (const char* key : {"xstar", "alpha", "C_estimate", "window", "residual", "min_uyy", "max_uyy", "scan_windows",
                            "goldstein", "status"})
        if (!a.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    if (!a["scan_windows"].is_array()) throw ConfigError(where + ": scan_windows is not an array");
    for (const auto& w : a["scan_windows"])
        if (!w.is_object() || !w.contains("k") || !w.contains("max_ratio"))
            throw ConfigError(where + ": scan_windows entries need k and max_ratio");
    if (!a["goldstein"].is_array()) throw ConfigError(where + ": goldstein is not an array");
    for (const char* key : {"xstar", "alpha", "C_estimate", "residual", "min_uyy", "max_uyy"})
        if (!a[key].is_null() && !a[key].is_number()) throw ConfigError(where + ": field '" + key + "' is not a number");
}

std::string num_or(const json& a, const char* key, const char* missing = "n/a") {
    if (!a.contains(key) || a[key].is_null()) return missing;
    return cell(a[key], 5);
}

// Spread across the columns as max/min of absolute values, blank when fewer than two values.
std::string spread(const std::vector<json>& docs, const char* key) {
    std::vector<double> v;
    for (const auto& a : docs)
        if (a.contains(key) && a[key].is_number()) v.push_back(std::abs(a[key].get<double>()));
    if (v.size() < 2) return "";
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*lo == 0.0) return "inf";
    return "ratio " + fmt_g(*hi / *lo, 4);
}

}  // namespace

int cmd_report(const ReportArgs& args, std::ostream& out, std::ostream& err) {
    if (args.analyses.empty()) {
        err << "error: no analysis files given\n";
        return exit_usage;
    }
    std::vector<json> docs;
    std::vector<std::string> names;
    try {
        for (const auto& p : args.analyses) {
            std::ifstream in(p);
            if (!in) throw ConfigError("cannot open " + p.string());
            json a;
            try {
                in >> a;
            } catch (const json::exception& e) {
                throw ConfigError(p.string() + ": invalid JSON: " + e.what());
            }
            check_schema(a, p.string());
            docs.push_back(std::move(a));
            const auto parent = p.parent_path().filename().string();
            names.push_back(parent.empty() ? p.stem().string() : parent);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    std::vector<std::vector<std::string>> rows;
    auto row = [&](const std::string& title, auto&& value, const std::string& extra) {
        std::vector<std::string> r{title};
        for (const auto& a : docs) r.push_back(value(a));
        r.push_back(extra);
        rows.push_back(std::move(r));
    };
    auto sep_only = [](auto&& f) {
        return [f](const json& a) -> std::string {
            if (a["status"] != "separated" || a["xstar"].is_null()) return "n/a";
            return f(a);
        };
    };
    auto yes_no = [](bool b) { return std::string(b ? "yes" : "no"); };

    row("separation occurred",
        [&](const json& a) -> std::string {
            if (a.contains("separation_bound") && a["separation_bound"].is_null()) return "n/a";
            return yes_no(a["status"] == "separated");
        },
        "");
    row("X* below mu x0 / 2",
        sep_only([](const json& a) -> std::string {
            const auto& b = a["separation_bound"];
            if (!b.is_object()) return "n/a";
            return std::string(b["satisfied"] == true ? "yes" : "no") + " (mu=" + cell(b["mu"], 3) +
                   ", bound " + cell(b["bound"], 4) + ")";
        }),
        "");
    row("inflow slope premise",
        [&](const json& a) -> std::string {
            if (!a.contains("separation_condition") || !a["separation_condition"].is_object()) return "n/a";
            const auto& c = a["separation_condition"];
            return yes_no(c["satisfied"] == true) + " (" + cell(c["slope_sup"], 3) + " vs " + cell(c["threshold"], 3) + ")";
        },
        "");
    row("X*", sep_only([](const json& a) { return cell(a["xstar"], 7); }), spread(docs, "xstar"));
    row("wall quarter bound C", sep_only([](const json& a) { return num_or(a, "C_estimate"); }), spread(docs, "C_estimate"));
    row("wall exponent alpha", sep_only([](const json& a) { return num_or(a, "alpha"); }), spread(docs, "alpha"));
    row("curve quarter-rate band",
        sep_only([](const json& a) -> std::string {
            if (a["scan_windows"].empty()) return "n/a";
            return num_or(a, "scan_band") + " over " + std::to_string(a["scan_windows"].size()) + " windows";
        }),
        spread(docs, "scan_band"));
    row("curve quarter-rate slope", sep_only([](const json& a) { return num_or(a, "scan_slope"); }), "");
    row("curvature lower bound min u_yy", [](const json& a) { return num_or(a, "min_uyy"); }, spread(docs, "min_uyy"));
    row("curvature upper bound max u_yy", [](const json& a) { return num_or(a, "max_uyy"); }, spread(docs, "max_uyy"));
    row("inflow curvature hypothesis",
        [&](const json& a) -> std::string {
            if (!a.contains("curvature_hypothesis")) return "n/a";
            return yes_no(a["curvature_hypothesis"] == true);
        },
        "");
    row("general pressure repeat",
        [&](const json& a) -> std::string {
            if (!a.contains("scenario") || a["scenario"]["flow_mode"] != "polynomial") return "n/a";
            return yes_no(a["status"] == "separated");
        },
        "");
    row("weighted-mass max residual",
        [](const json& a) -> std::string {
            if (!a.contains("weighted_mass") || !a["weighted_mass"].is_object()) return "n/a";
            return num_or(a["weighted_mass"], "max_residual");
        },
        "");

    std::vector<std::size_t> width(docs.size() + 2, 0);
    width[0] = 30;
    for (std::size_t i = 0; i < names.size(); ++i) width[i + 1] = names[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    auto print = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out << std::left << std::setw(static_cast<int>(width[i])) << r[i];
            if (i + 1 < r.size()) out << " | ";
        }
        out << "\n";
    };
    std::vector<std::string> header{"criterion"};
    header.insert(header.end(), names.begin(), names.end());
    header.push_back(docs.size() > 1 ? "stability" : "");
    print(header);
    std::size_t total = 0;
    for (auto w : width) total += w + 3;
    out << std::string(total - 3, '-') << "\n";
    for (const auto& r : rows) print(r);
    return exit_ok;
}

}  // namespace prandtl::cli
