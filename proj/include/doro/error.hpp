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

#ifndef DORO_ERROR_HPP
#define DORO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace doro {

/// Base class of everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a documented precondition (NaN samples, negative
/// masses, support escaping the domain, mismatched grids, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A file does not parse under its declared format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure (unreadable path, short write, ...).
class IoError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter lies outside its mathematical domain, e.g. a Riesz
/// order a outside (0, d).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configuration object violates its invariants (empty scale list,
/// unsupported pad factor, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An instance is too large for an exhaustive routine.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace doro

#endif  // DORO_ERROR_HPP
