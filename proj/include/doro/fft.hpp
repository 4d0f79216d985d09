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

#ifndef DORO_FFT_HPP
#define DORO_FFT_HPP

#include <complex>

#include "doro/grid.hpp"

namespace doro::detail {

/// In-place complex DFT of a d-dimensional row-major array (last axis
/// fastest). The inverse transform carries the 1/N normalization so
/// fft(fft(x), inverse) == x. Plans are created per call behind a planner
/// lock; concurrent transforms of distinct arrays are safe.
void fft(std::complex<double>* data, const Index3& dims, int d, bool inverse);

}  // namespace doro::detail

#endif  // DORO_FFT_HPP
