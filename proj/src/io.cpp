// Copyright 2026 The Doro Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doro/io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "doro/error.hpp"

namespace doro {

namespace {

constexpr char kMagic[4] = {'D', 'O', 'R', 'O'};
constexpr std::uint8_t kVersion = 1;

// The on-disk layout is little-endian, as are all targets we build for.
static_assert(std::endian::native == std::endian::little);

void read_exact(std::ifstream& in, void* dst, std::size_t n, std::size_t offset,
                const std::string& what) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw FormatError("truncated field file: expected " + what + " at byte offset " +
                      std::to_string(offset));
  }
}

}  // namespace

FieldFormat field_format_from_name(const std::string& name) {
  if (name == "binary") return FieldFormat::binary;
  if (name == "csv") return FieldFormat::csv;
  throw ValidationError("unknown field format '" + name + "' (expected binary or csv)");
}

static ScalarField load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open field file " + path.string());

  std::size_t offset = 0;
  char magic[4];
  read_exact(in, magic, 4, offset, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("bad magic bytes at byte offset 0 in " + path.string());
  }
  offset += 4;

  std::uint8_t version = 0, d = 0;
  std::uint16_t reserved = 0;
  read_exact(in, &version, 1, offset, "version");
  if (version != kVersion) {
    throw FormatError("unsupported version " + std::to_string(version) + " at byte offset " +
                      std::to_string(offset));
  }
  offset += 1;
  read_exact(in, &d, 1, offset, "dimension");
  if (d != 2 && d != 3) {
    throw FormatError("dimension must be 2 or 3 at byte offset " + std::to_string(offset));
  }
  offset += 1;
  read_exact(in, &reserved, 2, offset, "reserved");
  if (reserved != 0) {
    throw FormatError("reserved bytes must be zero at byte offset " + std::to_string(offset));
  }
  offset += 2;

  GridSpec grid;
  grid.d = d;
  grid.dims = {1, 1, 1};
  for (int a = 0; a < d; ++a) {
    std::uint32_t n = 0;
    read_exact(in, &n, 4, offset, "dims");
    grid.dims[a] = static_cast<int>(n);
    offset += 4;
  }
  read_exact(in, &grid.h, 8, offset, "spacing");
  offset += 8;
  for (int a = 0; a < d; ++a) {
    read_exact(in, &grid.origin[a], 8, offset, "origin");
    offset += 8;
  }
  try {
    grid.validate();
  } catch (const ValidationError& e) {
    throw FormatError(std::string("invalid grid header (") + e.what() + ") ending at byte offset " +
                      std::to_string(offset));
  }

  ScalarField f(grid);
  const std::size_t count = grid.node_count();
  in.read(reinterpret_cast<char*>(f.samples.data()), static_cast<std::streamsize>(count * 8));
  const std::size_t got = static_cast<std::size_t>(in.gcount());
  if (got != count * 8) {
    throw FormatError("truncated payload: got " + std::to_string(got / 8) + " of " +
                      std::to_string(count) + " samples, failing at byte offset " +
                      std::to_string(offset + got));
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::isfinite(f.samples[i])) {
      throw ValidationError("non-finite sample at node index " + std::to_string(i) + " in " +
                            path.string());
    }
  }
  return f;
}

static ScalarField load_csv(const std::filesystem::path& path, double spacing) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open field file " + path.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
        if (pos != cell.size()) throw std::invalid_argument("trailing junk");
        row.push_back(v);
      } catch (const std::exception&) {
        throw FormatError("cannot parse value '" + cell + "' on line " + std::to_string(lineno) +
                          " of " + path.string());
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError("ragged csv: line " + std::to_string(lineno) + " has " +
                        std::to_string(row.size()) + " values, expected " +
                        std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError("empty csv field file " + path.string());

  GridSpec grid;
  grid.d = 2;
  grid.dims = {static_cast<int>(rows.size()), static_cast<int>(rows.front().size()), 1};
  grid.h = spacing;
  grid.validate();

  ScalarField f(grid);
  for (int i = 0; i < grid.dims[0]; ++i) {
    for (int j = 0; j < grid.dims[1]; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v)) {
        throw ValidationError("non-finite sample at node index " +
                              std::to_string(f.grid.index({i, j, 0})));
      }
      f.at({i, j, 0}) = v;
    }
  }
  return f;
}

ScalarField load_field(const std::filesystem::path& path, FieldFormat format, double csv_spacing) {
  if (!std::filesystem::exists(path)) throw IoError("field file does not exist: " + path.string());
  return format == FieldFormat::binary ? load_binary(path) : load_csv(path, csv_spacing);
}

void save_field(const ScalarField& f, const std::filesystem::path& path, FieldFormat format) {
  f.validate();
  if (format == FieldFormat::csv && f.grid.d != 2) {
    throw ValidationError("csv field format supports d = 2 only");
  }
  std::ofstream out(path, format == FieldFormat::binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot open for writing: " + path.string());

  if (format == FieldFormat::binary) {
    out.write(kMagic, 4);
    const std::uint8_t version = kVersion;
    const std::uint8_t d = static_cast<std::uint8_t>(f.grid.d);
    const std::uint16_t reserved = 0;
    out.write(reinterpret_cast<const char*>(&version), 1);
    out.write(reinterpret_cast<const char*>(&d), 1);
    out.write(reinterpret_cast<const char*>(&reserved), 2);
    for (int a = 0; a < f.grid.d; ++a) {
      const std::uint32_t n = static_cast<std::uint32_t>(f.grid.dims[a]);
      out.write(reinterpret_cast<const char*>(&n), 4);
    }
    out.write(reinterpret_cast<const char*>(&f.grid.h), 8);
    for (int a = 0; a < f.grid.d; ++a) {
      out.write(reinterpret_cast<const char*>(&f.grid.origin[a]), 8);
    }
    out.write(reinterpret_cast<const char*>(f.samples.data()),
              static_cast<std::streamsize>(f.samples.size() * 8));
  } else {
    char buf[64];
    for (int i = 0; i < f.grid.dims[0]; ++i) {
      for (int j = 0; j < f.grid.dims[1]; ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", f.at({i, j, 0}));
        out << buf;
        if (j + 1 < f.grid.dims[1]) out << ',';
      }
      out << '\n';
    }
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace doro
