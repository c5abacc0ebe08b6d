#pragma once

#include "curlwave/kernels.hpp"
#include "curlwave/verification.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace curlwave {

/// CSV layout: header x1,x2,x3,t,U1,U2,U3 (complex fields add U1_im,U2_im,U3_im),
/// then a final `singular` column (0/1). One row per (point, time), point-major.
/// Numbers use 17 significant digits; singular rows carry NaN components.
void write_field_csv(std::ostream& out, const FieldSamples& samples, bool complex_values);
/// Samples the field and writes the CSV to `path`; IoError when the file cannot be written.
void export_field(const WaveField& field, const Grid& grid, const std::string& path,
                  ExecMode mode = ExecMode::Parallel);

struct CsvRow {
    Vec3 x{};
    double t = 0.0;
    Vec3 re{}, im{};
    bool singular = false;
};
struct CsvTable {
    bool complex_values = false;
    std::vector<CsvRow> rows;
};
/// Reads a file written by export_field; IoError on a missing file or malformed row.
CsvTable read_field_csv(const std::string& path);

std::string diagnostics_json(const Diagnostics& diag);
void export_diagnostics(const Diagnostics& diag, const std::string& path);

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace curlwave
