#include "majoranon/cli/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "majoranon/cli/config.hpp"
#include "majoranon/errors.hpp"

namespace majoranon::cli {
namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

}  // namespace

std::string column_name(SeriesColumn c) {
  switch (c) {
    case SeriesColumn::pseudo_energy: return "pseudo_energy";
    case SeriesColumn::centroid: return "centroid";
    case SeriesColumn::rms_width: break;
  }
  return "rms_width";
}

std::string format_number(double v) {
  std::array<char, 40> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  if (ec != std::errc()) throw InvalidParameter("cannot format number");
  return std::string(buf.data(), ptr);
}

double parse_number(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InvalidParameter("malformed number '" + text + "'");
  }
  return v;
}

void write_table_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
                     const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw ShapeError("CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  finish(out, path);
}

void write_series_csv(const ObservableSeries& series, const std::vector<SeriesColumn>& columns,
                      const std::filesystem::path& path) {
  if (!series.kappa_per_mm()) throw InvalidParameter("series needs kappa for the Z_mm column");
  std::vector<std::string> header{"zeta", "Z_mm"};
  for (auto c : columns) header.push_back(column_name(c));
  std::vector<std::vector<double>> values;
  for (auto c : columns) {
    switch (c) {
      case SeriesColumn::pseudo_energy: values.push_back(series.pseudo_energies()); break;
      case SeriesColumn::centroid: values.push_back(series.centroids()); break;
      case SeriesColumn::rms_width: values.push_back(series.rms_widths()); break;
    }
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::vector<double> row{series.zeta()[i], series.distance_mm(i)};
    for (const auto& v : values) row.push_back(v[i]);
    rows.push_back(std::move(row));
  }
  write_table_csv(header, rows, path);
}

void write_map_csv(const std::vector<double>& zetas, const Eigen::MatrixXd& map,
                   const std::filesystem::path& path) {
  if (static_cast<Eigen::Index>(zetas.size()) != map.rows()) {
    throw ShapeError("map rows do not match the sample list");
  }
  std::vector<std::string> header{"zeta"};
  for (Eigen::Index c = 0; c < map.cols(); ++c) header.push_back("site_" + std::to_string(c + 1));
  std::vector<std::vector<double>> rows;
  for (Eigen::Index r = 0; r < map.rows(); ++r) {
    std::vector<double> row{zetas[static_cast<std::size_t>(r)]};
    for (Eigen::Index c = 0; c < map.cols(); ++c) row.push_back(map(r, c));
    rows.push_back(std::move(row));
  }
  write_table_csv(header, rows, path);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string field;
    if (first) {
      while (std::getline(fields, field, ',')) table.header.push_back(field);
      first = false;
      continue;
    }
    std::vector<double> row;
    while (std::getline(fields, field, ',')) row.push_back(parse_number(field));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace majoranon::cli
