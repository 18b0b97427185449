#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fracdyn {

/// 17 significant digits, '.' decimal point; lossless for doubles.
std::string format_value(double v);

/// Shortest representation that round-trips (used in file names).
std::string format_short(double v);

/// Column-oriented CSV table; all columns must have equal length.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

/// Throws std::invalid_argument on ragged columns and std::runtime_error on
/// I/O failure.
void write_csv(const std::filesystem::path& path, const CsvTable& table);

}  // namespace fracdyn
