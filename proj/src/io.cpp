#include "antiplane/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace antiplane {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string field_to_csv(const Field& u) {
  std::string out = std::to_string(u.nx) + "," + std::to_string(u.ny) + "," + fmt17(u.h) + "\n";
  for (int j = 0; j < u.ny; ++j) {
    for (int i = 0; i < u.nx; ++i) {
      if (i) out += ',';
      out += fmt17(u.at(i, j));
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<double> parse_row(const std::string& line, int line_no) {
  std::vector<double> vals;
  const char* p = line.c_str();
  const char* end = p + line.size();
  while (p < end) {
    char* next = nullptr;
    const double v = std::strtod(p, &next);
    if (next == p || !std::isfinite(v)) throw IoError("field CSV: malformed number on line " + std::to_string(line_no));
    vals.push_back(v);
    p = next;
    while (p < end && (*p == ' ' || *p == '\r')) ++p;
    if (p < end) {
      if (*p != ',') throw IoError("field CSV: expected ',' on line " + std::to_string(line_no));
      ++p;
    }
  }
  return vals;
}

}  // namespace

Field field_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("field CSV: empty input");
  const auto header = parse_row(line, 1);
  if (header.size() != 3) throw IoError("field CSV: header must be nx,ny,h");
  const int nx = static_cast<int>(header[0]);
  const int ny = static_cast<int>(header[1]);
  if (nx != header[0] || ny != header[1] || nx < 1 || ny < 1 || !(header[2] > 0.0))
    throw IoError("field CSV: invalid grid header");

  Field u(nx, ny, header[2]);
  for (int j = 0; j < ny; ++j) {
    if (!std::getline(in, line)) throw IoError("field CSV: expected " + std::to_string(ny) + " rows");
    const auto row = parse_row(line, j + 2);
    if (static_cast<int>(row.size()) != nx) throw IoError("field CSV: row " + std::to_string(j) + " has wrong length");
    for (int i = 0; i < nx; ++i) u.at(i, j) = row[i];
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line != "\r") throw IoError("field CSV: trailing data");
  }
  return u;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
}

void write_field_csv(const Field& u, const std::filesystem::path& path) { write_text(path, field_to_csv(u)); }

Field read_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return field_from_csv(ss.str());
}

std::string table_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) out += ',';
    out += header[k];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += fmt17(row[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace antiplane
