#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcclone/optimizer.hpp"

namespace pcclone {

inline constexpr const char* kToolVersion = "pcclone 0.1.0";
inline constexpr const char* kFormatVersion = "1";

// Provenance sidecar for every emitted file: command, full parameter echo,
// seed, versions, timestamp.  Re-running the recorded command reproduces the
// output byte-for-byte (the timestamp lives only in the manifest).
struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string format_version = kFormatVersion;
    std::string timestamp_utc;
};

RunManifest make_manifest(std::string command, nlohmann::json config, std::uint64_t seed = 0);
nlohmann::json manifest_json(const RunManifest& manifest);
std::string utc_timestamp_now();

// 6 significant digits, '.' decimal separator regardless of locale
std::string format_g6(double value);

void write_file_or_throw(const std::string& path, const std::string& content);
// writes `path` plus `path + ".manifest.json"`
void write_output_with_manifest(const std::string& path, const std::string& content,
                                const RunManifest& manifest);

const char* scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(const std::string& name);

// --- reproduction tables -------------------------------------------------

struct Table1Row {
    double alpha = 0.0;
    OptimumReport ff_sg;
    OptimumReport ff_dh_eta08;
    FidelityResult cl_sg;
    FidelityResult cl_dh_eta1;   // the published column
    FidelityResult cl_dh_eta08;  // reported alternative
};

std::vector<Table1Row> compute_table1();
std::string table1_csv(const std::vector<Table1Row>& rows);

struct Fig1Row {
    double alpha = 0.0;
    double ff_sg = 0.0;
    double ff_dh_eta1 = 0.0;
    double ff_dh_eta08 = 0.0;
    double cl_sg = 0.0;
};

std::vector<Fig1Row> compute_fig1(double alpha_min, double alpha_max, int steps);
std::string fig1_csv(const std::vector<Fig1Row>& rows);

struct Fig2Row {
    int m_out = 0;
    double ff_sg = 0.0;
    double ff_dh_eta1 = 0.0;
};

// M in {2..30} plus {50, 100, 200}, capped at m_max
std::vector<int> fig2_default_grid(int m_max);
std::vector<Fig2Row> compute_fig2(const std::vector<int>& m_grid);
std::string fig2_csv(const std::vector<Fig2Row>& rows);

}  // namespace pcclone
