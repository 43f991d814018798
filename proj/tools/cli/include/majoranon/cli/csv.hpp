#pragma once

// CSV output. Numbers carry 17 significant digits and every double survives
// a write/read round trip; lines end in LF.

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "majoranon/observables.hpp"

namespace majoranon::cli {

enum class SeriesColumn { pseudo_energy, centroid, rms_width };

std::string column_name(SeriesColumn c);

std::string format_number(double v);

/// Exact inverse of format_number; throws InvalidParameter on malformed text.
double parse_number(const std::string& text);

/// Header `zeta,Z_mm,<columns>`, one row per sample. The series must know its
/// coupling constant. Throws IoError when the file cannot be written.
void write_series_csv(const ObservableSeries& series, const std::vector<SeriesColumn>& columns,
                      const std::filesystem::path& path);

/// Table form used by write_series_csv and the comparison output: a header
/// line followed by rows of numbers.
void write_table_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
                     const std::filesystem::path& path);

/// Header `zeta,site_1,...,site_C`; row r starts with zetas[r].
void write_map_csv(const std::vector<double>& zetas, const Eigen::MatrixXd& map,
                   const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads a file written by one of the writers above.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace majoranon::cli
