// Experiment configs, report tables, their CSV/JSON files and SVG plots.
#ifndef HURWITZ_REPORT_HPP
#define HURWITZ_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace hurwitz {

inline constexpr const char* kToolVersion = "hurwitz 0.1.0";

/// Anchors tying a table to the statement it illustrates.
const std::vector<std::string>& known_anchors();

struct Table {
    std::string name;
    std::string anchor;
    /// exact | modular-certified | exhaustive | sampled | mixed
    std::string certification;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Throws ValidationError if the width differs from the header.
    void add_row(std::vector<std::string> row);
    std::size_t column(const std::string& name) const;
};

struct Report {
    std::string kind;
    /// config echo in key order
    std::map<std::string, std::string> config;
    std::vector<Table> tables;
    nlohmann::json summary = nlohmann::json::object();
    /// written to the timing file only, so the report stays reproducible
    double wall_seconds = 0;

    const Table& table(const std::string& name) const;
};

std::string fmt(double x);
std::string to_csv(const Table& t);
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
Report load_report(const std::filesystem::path& json_path);

/// <kind>.json, <kind>_<table>.csv and <kind>_timing.json
std::vector<std::filesystem::path> report_paths(const Report& r, const std::filesystem::path& dir);

/// Writes every file through a temporary name.  Throws ValidationError if a
/// file exists and `force` is off; on any failure nothing is left behind.
std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir,
                                                bool force);

// ---------------------------------------------------------------------------

/// Flat `key = value` lines; `#` starts a comment.
struct ExperimentConfig {
    std::string kind;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    std::string out_dir = "results";

    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return params.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    long get_int(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
};

const std::vector<std::string>& experiment_kinds();

// ---------------------------------------------------------------------------

enum class PlotKind { betti_vs_n, distribution_vs_mu, hq_vs_q };
PlotKind parse_plot_kind(const std::string& text);

/// Self-contained SVG.  Throws ValidationError when the series is missing
/// or empty.
std::string plot_svg(const Report& r, PlotKind kind);

}  // namespace hurwitz

#endif
