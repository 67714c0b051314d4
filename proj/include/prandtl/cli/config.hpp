#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace prandtl::cli {

/// Flat "key = value" text with [section] headers; keys are addressed as "section.key".
/// '#' and ';' start comments. Throws ConfigError with the line number on malformed input.
class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<string>");
    static Config load(const std::filesystem::path& path);

    [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }
    [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
    [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const;
    [[nodiscard]] double get_double(const std::string& key, double fallback) const;
    [[nodiscard]] std::size_t get_size(const std::string& key, std::size_t fallback) const;
    [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;
    /// Comma-separated numbers; an empty value yields an empty list.
    [[nodiscard]] std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    [[nodiscard]] const std::map<std::string, std::string>& values() const { return values_; }
    [[nodiscard]] const std::string& origin() const { return origin_; }

private:
    std::map<std::string, std::string> values_;
    std::string origin_;
};

[[nodiscard]] std::vector<double> parse_number_list(const std::string& text, const std::string& what);

}  // namespace prandtl::cli
