#include "curlwave/export.hpp"

#include "curlwave/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace curlwave {

using json = nlohmann::json;

namespace {

void put(std::ostream& out, double v) {
    if (std::isnan(v)) {
        out << "NaN";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

double parse_number(const std::string& cell, std::size_t line) {
    if (cell == "NaN") return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != cell.size() || cell.empty())
        throw IoError("malformed number \"" + cell + "\" on line " + std::to_string(line));
    return v;
}

json fit_json(const DecayFit& f) {
    json j;
    j["exponent"] = std::isfinite(f.exponent) ? json(f.exponent) : json(nullptr);
    j["stderr"] = std::isfinite(f.stderr_) ? json(f.stderr_) : json(nullptr);
    j["insufficient_decay"] = f.insufficient;
    j["radii"] = f.radii;
    j["maxima"] = f.maxima;
    return j;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_field_csv(std::ostream& out, const FieldSamples& samples, bool complex_values) {
    out << "x1,x2,x3,t,U1,U2,U3";
    if (complex_values) out << ",U1_im,U2_im,U3_im";
    out << ",singular\n";
    const std::size_t nt = samples.times.size();
    for (std::size_t i = 0; i < samples.points.size(); ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
            const auto& x = samples.points[i];
            const auto& v = samples.values[i * nt + j];
            for (int k = 0; k < 3; ++k) {
                put(out, x[k]);
                out << ',';
            }
            put(out, samples.times[j]);
            for (int k = 0; k < 3; ++k) {
                out << ',';
                put(out, v.re[k]);
            }
            if (complex_values)
                for (int k = 0; k < 3; ++k) {
                    out << ',';
                    put(out, v.im[k]);
                }
            out << ',' << (samples.singular[i] ? 1 : 0) << '\n';
        }
    }
}

void export_field(const WaveField& field, const Grid& grid, const std::string& path, ExecMode mode) {
    const auto samples = sample_field(field, grid.points(), grid.times(), mode);
    if (path.empty() || path == "-") {
        write_field_csv(std::cout, samples, field.is_complex());
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    write_field_csv(out, samples, field.is_complex());
    if (!out) throw IoError("write failed for " + path);
}

CsvTable read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + " is empty");
    if (line == "x1,x2,x3,t,U1,U2,U3,U1_im,U2_im,U3_im,singular") table.complex_values = true;
    else if (line != "x1,x2,x3,t,U1,U2,U3,singular") throw IoError("unexpected CSV header in " + path);
    const std::size_t columns = table.complex_values ? 11 : 8;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != columns)
            throw IoError("line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                          " columns, expected " + std::to_string(columns));
        CsvRow row;
        for (int k = 0; k < 3; ++k) row.x[k] = parse_number(cells[k], lineno);
        row.t = parse_number(cells[3], lineno);
        for (int k = 0; k < 3; ++k) row.re[k] = parse_number(cells[4 + k], lineno);
        if (table.complex_values)
            for (int k = 0; k < 3; ++k) row.im[k] = parse_number(cells[7 + k], lineno);
        row.singular = cells.back() == "1";
        table.rows.push_back(row);
    }
    return table;
}

std::string diagnostics_json(const Diagnostics& d) {
    json j;
    j["residual_max"] = number_or_null(d.residual_max);
    j["residual_l2"] = number_or_null(d.residual_l2);
    j["parallel_defect"] = number_or_null(d.parallel_defect);
    j["curl_defect"] = number_or_null(d.curl_defect);
    j["periodicity_defect"] = number_or_null(d.periodicity_defect);
    j["points_checked"] = d.points_checked;
    j["points_skipped"] = d.points_skipped;
    if (d.spatial_decay) j["spatial_decay"] = fit_json(*d.spatial_decay);
    if (d.spacetime_decay) j["spacetime_decay"] = fit_json(*d.spacetime_decay);
    if (d.support_radius) j["support_radius"] = *d.support_radius;
    if (d.outside_support_max) j["outside_support_max"] = *d.outside_support_max;
    if (!d.convergence_table.empty()) {
        json rows = json::array();
        for (const auto& r : d.convergence_table) rows.push_back({{"T", r.T}, {"sup_error", r.sup_error}});
        j["convergence_table"] = rows;
    }
    if (!d.holder_ratios.empty()) j["holder_ratios"] = d.holder_ratios;
    if (d.holder_bound) j["holder_bound"] = *d.holder_bound;
    j["pass"] = d.pass;
    j["thresholds"] = d.thresholds;
    j["metadata"] = d.metadata;
    j["all_pass"] = d.all_pass();
    return j.dump(2) + "\n";
}

void export_diagnostics(const Diagnostics& diag, const std::string& path) {
    write_text(path, diagnostics_json(diag));
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace curlwave
