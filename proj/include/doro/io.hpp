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

#ifndef DORO_IO_HPP
#define DORO_IO_HPP

#include <filesystem>
#include <string>

#include "doro/grid.hpp"

namespace doro {

enum class FieldFormat { binary, csv };

/// Binary field layout (little-endian): magic "DORO", u8 version = 1, u8 d,
/// u16 reserved = 0, d x u32 dims, f64 h, d x f64 origin, then
/// product(dims) f64 samples row-major, last axis fastest.
///
/// CSV (d = 2 only): dims[0] lines of dims[1] comma-separated decimal values;
/// the spacing is supplied by `csv_spacing` since the file does not carry it.
ScalarField load_field(const std::filesystem::path& path, FieldFormat format,
                       double csv_spacing = 1.0);

/// Inverse of load_field; binary round-trips bit-exactly, csv to full
/// decimal precision.
void save_field(const ScalarField& f, const std::filesystem::path& path, FieldFormat format);

FieldFormat field_format_from_name(const std::string& name);

}  // namespace doro

#endif  // DORO_IO_HPP
