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

#ifndef DORO_REPORT_HPP
#define DORO_REPORT_HPP

#include <string>
#include <variant>
#include <vector>

namespace doro {

/// Ordered key -> value map carrying norms, ratios and verdicts for the
/// verification pipelines. Values are finite reals or booleans; keys are
/// unique and keep insertion order so serialized reports are byte-stable.
///
/// Convention: boolean keys ending in "_pass" are verdicts; a report (and a
/// CLI run emitting it) passes iff every verdict is true. Undefined ratios
/// are encoded by a companion "<key>_defined = false" flag instead of a NaN.
class Report {
 public:
  using Value = std::variant<double, bool>;

  void set(const std::string& key, double value);
  void set(const std::string& key, bool value);

  /// Adds `value` under `key`; for ratios that may be undefined use
  /// set_ratio which writes the companion _defined flag.
  void set_ratio(const std::string& key, double numerator, double denominator);

  bool has(const std::string& key) const;
  double number(const std::string& key) const;
  bool flag(const std::string& key) const;

  /// True iff every "*_pass" boolean entry is true (vacuously true when
  /// there are none).
  bool all_verdicts_pass() const;

  /// Appends all entries of `other` with `prefix` prepended to each key.
  void merge(const Report& other, const std::string& prefix);

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }

  /// UTF-8 "key = value" lines, one entry per line.
  std::string to_text() const;

  /// JSON object with the same keys, insertion-ordered.
  std::string to_json() const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

/// Deterministic numeric formatting shared by reports and CSV exports.
std::string format_number(double v);

}  // namespace doro

#endif  // DORO_REPORT_HPP
