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

#include "doro/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace doro::detail {

namespace {
// The FFTW planner is not thread-safe; execution of distinct plans is.
std::mutex planner_mutex;
}  // namespace

void fft(std::complex<double>* data, const Index3& dims, int d, bool inverse) {
  int n[3] = {dims[0], dims[1], dims[2]};
  fftw_complex* p = reinterpret_cast<fftw_complex*>(data);

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft(d, n, p, p, inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
  }

  if (inverse) {
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(dims[a]);
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
  }
}

}  // namespace doro::detail
