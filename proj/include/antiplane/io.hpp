// Field CSV and small text-output helpers.
//
// Field CSV layout: a header line "nx,ny,h" holding the grid values, then ny
// lines (one per grid row, x2 increasing), each with nx comma-separated
// values. Numbers are printed with 17 significant digits.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "antiplane/grid.hpp"

namespace antiplane {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g formatting.
std::string fmt17(double v);

void write_field_csv(const Field& u, const std::filesystem::path& path);
Field read_field_csv(const std::filesystem::path& path);

std::string field_to_csv(const Field& u);
Field field_from_csv(const std::string& text);

/// Writes text to path, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

/// CSV with a header row; every cell formatted by fmt17.
std::string table_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

}  // namespace antiplane
