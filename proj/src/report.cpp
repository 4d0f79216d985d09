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

#include "doro/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "doro/error.hpp"

namespace doro {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void Report::set(const std::string& key, double value) {
  if (!std::isfinite(value)) {
    throw ValidationError("report value for key '" + key + "' must be finite");
  }
  if (has(key)) throw ValidationError("duplicate report key '" + key + "'");
  entries_.emplace_back(key, Value(value));
}

void Report::set(const std::string& key, bool value) {
  if (has(key)) throw ValidationError("duplicate report key '" + key + "'");
  entries_.emplace_back(key, Value(value));
}

void Report::set_ratio(const std::string& key, double numerator, double denominator) {
  const double r = numerator / denominator;
  if (denominator != 0.0 && std::isfinite(r)) {
    set(key, r);
    set(key + "_defined", true);
  } else {
    set(key + "_defined", false);
  }
}

bool Report::has(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return true;
  }
  return false;
}

double Report::number(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) {
      if (const double* p = std::get_if<double>(&v)) return *p;
      throw ValidationError("report key '" + key + "' is a flag, not a number");
    }
  }
  throw ValidationError("report has no key '" + key + "'");
}

bool Report::flag(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) {
      if (const bool* p = std::get_if<bool>(&v)) return *p;
      throw ValidationError("report key '" + key + "' is a number, not a flag");
    }
  }
  throw ValidationError("report has no key '" + key + "'");
}

bool Report::all_verdicts_pass() const {
  for (const auto& [k, v] : entries_) {
    if (k.size() >= 5 && k.compare(k.size() - 5, 5, "_pass") == 0) {
      if (const bool* p = std::get_if<bool>(&v)) {
        if (!*p) return false;
      }
    }
  }
  return true;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& [k, v] : other.entries_) {
    if (const double* p = std::get_if<double>(&v)) {
      set(prefix + k, *p);
    } else {
      set(prefix + k, std::get<bool>(v));
    }
  }
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += " = ";
    if (const double* p = std::get_if<double>(&v)) {
      out += format_number(*p);
    } else {
      out += std::get<bool>(v) ? "true" : "false";
    }
    out += '\n';
  }
  return out;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : entries_) {
    if (const double* p = std::get_if<double>(&v)) {
      j[k] = *p;
    } else {
      j[k] = std::get<bool>(v);
    }
  }
  return j.dump(2);
}

}  // namespace doro
