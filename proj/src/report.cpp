#include "pcclone/report.hpp"

#include <charconv>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace pcclone {

RunManifest make_manifest(std::string command, nlohmann::json config, std::uint64_t seed) {
    RunManifest m;
    m.command = std::move(command);
    m.config = std::move(config);
    m.seed = seed;
    m.timestamp_utc = utc_timestamp_now();
    return m;
}

nlohmann::json manifest_json(const RunManifest& manifest) {
    return nlohmann::json{{"command", manifest.command},
                          {"config", manifest.config},
                          {"seed", manifest.seed},
                          {"versions",
                           {{"tool", manifest.tool_version}, {"format", manifest.format_version}}},
                          {"timestamp", manifest.timestamp_utc}};
}

std::string utc_timestamp_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string format_g6(double value) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

void write_file_or_throw(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("io: cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("io: failed writing '" + path + "'");
}

void write_output_with_manifest(const std::string& path, const std::string& content,
                                const RunManifest& manifest) {
    write_file_or_throw(path, content);
    write_file_or_throw(path + ".manifest.json", manifest_json(manifest).dump(2) + "\n");
}

const char* scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::ClSg: return "cl-sg";
        case Scheme::ClDh: return "cl-dh";
        case Scheme::FfSg: return "ff-sg";
        case Scheme::FfDh: return "ff-dh";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
    if (name == "cl-sg") return Scheme::ClSg;
    if (name == "cl-dh") return Scheme::ClDh;
    if (name == "ff-sg") return Scheme::FfSg;
    if (name == "ff-dh") return Scheme::FfDh;
    return std::nullopt;
}

std::vector<Table1Row> compute_table1() {
    std::vector<Table1Row> rows;
    for (double alpha : {3.0, 4.0, 5.0, 6.0}) {
        Table1Row row;
        row.alpha = alpha;

        SchemeConfig sg{1, 2, alpha, MeasurementModel::ideal_sg()};
        SchemeConfig dh08{1, 2, alpha, MeasurementModel::double_homodyne(0.8)};
        SchemeConfig dh1{1, 2, alpha, MeasurementModel::double_homodyne(1.0)};

        row.ff_sg = optimize_ff(sg);
        row.ff_dh_eta08 = optimize_ff(dh08);
        row.cl_sg = fid_cl_sg(sg);
        row.cl_dh_eta1 = fid_cl_dh(dh1);
        row.cl_dh_eta08 = fid_cl_dh(dh08);
        rows.push_back(row);
    }
    return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
    std::string csv = "alpha,F_ff_SG,k_SG,theta_SG,F_ff_DH_eta0.8,k_DH,theta_DH,F_cl_SG,F_cl_DH\n";
    for (const auto& r : rows) {
        csv += format_g6(r.alpha);
        csv += ',' + format_g6(r.ff_sg.fidelity.value);
        csv += ',' + format_g6(r.ff_sg.best.k);
        csv += ',' + format_g6(r.ff_sg.best.theta);
        csv += ',' + format_g6(r.ff_dh_eta08.fidelity.value);
        csv += ',' + format_g6(r.ff_dh_eta08.best.k);
        csv += ',' + format_g6(r.ff_dh_eta08.best.theta);
        csv += ',' + format_g6(r.cl_sg.value);
        csv += ',' + format_g6(r.cl_dh_eta1.value);
        csv += '\n';
    }
    return csv;
}

std::vector<Fig1Row> compute_fig1(double alpha_min, double alpha_max, int steps) {
    if (!(alpha_min >= 0.0) || !(alpha_min < alpha_max) || steps < 2)
        throw std::domain_error("fig1: requires 0 <= alpha_min < alpha_max and steps >= 2");
    std::vector<Fig1Row> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double alpha = alpha_min + (alpha_max - alpha_min) * i / (steps - 1);
        Fig1Row row;
        row.alpha = alpha;
        SchemeConfig sg{1, 2, alpha, MeasurementModel::ideal_sg()};
        SchemeConfig dh1{1, 2, alpha, MeasurementModel::double_homodyne(1.0)};
        SchemeConfig dh08{1, 2, alpha, MeasurementModel::double_homodyne(0.8)};
        row.ff_sg = optimize_ff(sg).fidelity.value;
        row.ff_dh_eta1 = optimize_ff(dh1).fidelity.value;
        row.ff_dh_eta08 = optimize_ff(dh08).fidelity.value;
        row.cl_sg = fid_cl_sg(sg).value;
        rows.push_back(row);
    }
    return rows;
}

std::string fig1_csv(const std::vector<Fig1Row>& rows) {
    std::string csv = "alpha,F_ff_SG,F_ff_DH_eta1,F_ff_DH_eta0.8,F_cl_SG\n";
    for (const auto& r : rows) {
        csv += format_g6(r.alpha);
        csv += ',' + format_g6(r.ff_sg);
        csv += ',' + format_g6(r.ff_dh_eta1);
        csv += ',' + format_g6(r.ff_dh_eta08);
        csv += ',' + format_g6(r.cl_sg);
        csv += '\n';
    }
    return csv;
}

std::vector<int> fig2_default_grid(int m_max) {
    if (m_max < 2) throw std::domain_error("fig2: m_max must be >= 2");
    std::vector<int> grid;
    for (int m = 2; m <= std::min(30, m_max); ++m) grid.push_back(m);
    for (int m : {50, 100, 200})
        if (m <= m_max) grid.push_back(m);
    return grid;
}

std::vector<Fig2Row> compute_fig2(const std::vector<int>& m_grid) {
    std::vector<Fig2Row> rows;
    rows.reserve(m_grid.size());
    for (int m : m_grid) {
        Fig2Row row;
        row.m_out = m;
        SchemeConfig sg{1, m, 5.0, MeasurementModel::ideal_sg()};
        SchemeConfig dh1{1, m, 5.0, MeasurementModel::double_homodyne(1.0)};
        row.ff_sg = optimize_ff(sg).fidelity.value;
        row.ff_dh_eta1 = optimize_ff(dh1).fidelity.value;
        rows.push_back(row);
    }
    return rows;
}

std::string fig2_csv(const std::vector<Fig2Row>& rows) {
    std::string csv = "M,F_ff_SG,F_ff_DH_eta1\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.m_out);
        csv += ',' + format_g6(r.ff_sg);
        csv += ',' + format_g6(r.ff_dh_eta1);
        csv += '\n';
    }
    return csv;
}

}  // namespace pcclone
