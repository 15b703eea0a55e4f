// Copyright 2026 The plink authors.
//
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

// Compares the OpenMP kernels against the serial reference at production
// sizes (d = 768 layers, 512-subword pooling) and checks they agree bitwise.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "plink/core/kernels.hpp"
#include "plink/core/rng.hpp"

namespace {

using plink::Rng;

std::vector<float> random_vec(size_t n, Rng& rng) {
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng.uniform(-1.0, 1.0));
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

template <typename Fn>
double time_loop(size_t iterations, Fn&& fn) {
  fn();  // warm up
  const auto start = std::chrono::steady_clock::now();
  for (size_t i = 0; i < iterations; ++i) fn();
  return seconds_since(start) / static_cast<double>(iterations);
}

void report(const std::string& name, double serial, double parallel,
            bool equal) {
  std::printf("%-28s serial %9.3f us   omp %9.3f us   speedup %5.2fx   %s\n",
              name.c_str(), serial * 1e6, parallel * 1e6, serial / parallel,
              equal ? "bit-equal" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; both columns run the same serial code\n");
#endif

  Rng rng(42);
  constexpr size_t kIters = 200;

  {
    const size_t rows = 768, cols = 1536;
    const auto w = random_vec(rows * cols, rng);
    const auto b = random_vec(rows, rng);
    const auto x = random_vec(cols, rng);
    std::vector<float> y_ref(rows), y_omp(rows);
    const double serial = time_loop(kIters, [&] {
      plink::kernels::ref::affine(w.data(), b.data(), x.data(), y_ref.data(),
                                  rows, cols);
    });
    const double parallel = time_loop(kIters, [&] {
      plink::kernels::affine(w.data(), b.data(), x.data(), y_omp.data(), rows,
                             cols);
    });
    report("affine 768x1536", serial, parallel, y_ref == y_omp);
  }

  {
    const size_t rows = 768, cols = 1536;
    const auto w = random_vec(rows * cols, rng);
    const auto dy = random_vec(rows, rng);
    std::vector<float> dx_ref(cols), dx_omp(cols);
    const double serial = time_loop(kIters, [&] {
      plink::kernels::ref::affine_grad_input(w.data(), dy.data(),
                                             dx_ref.data(), rows, cols);
    });
    const double parallel = time_loop(kIters, [&] {
      plink::kernels::affine_grad_input(w.data(), dy.data(), dx_omp.data(),
                                        rows, cols);
    });
    report("affine_grad_input 768x1536", serial, parallel, dx_ref == dx_omp);
  }

  {
    const size_t n = 512, dim = 768;
    const auto vecs = random_vec(n * dim, rng);
    std::vector<float> out_ref(dim), out_omp(dim);
    const double serial = time_loop(kIters, [&] {
      plink::kernels::ref::max_pool(vecs.data(), n, dim, out_ref.data());
    });
    const double parallel = time_loop(kIters, [&] {
      plink::kernels::max_pool(vecs.data(), n, dim, out_omp.data());
    });
    report("max_pool 512x768", serial, parallel, out_ref == out_omp);
  }

  {
    // Gradient accumulation at the production layer size.
    const size_t rows = 512, cols = 1536;
    const auto dy = random_vec(rows, rng);
    const auto x = random_vec(cols, rng);
    std::vector<float> dw_ref(rows * cols, 0.0f), db_ref(rows, 0.0f);
    std::vector<float> dw_omp(rows * cols, 0.0f), db_omp(rows, 0.0f);
    const double serial = time_loop(kIters, [&] {
      plink::kernels::ref::affine_acc_grad_params(
          dw_ref.data(), db_ref.data(), dy.data(), x.data(), rows, cols);
    });
    const double parallel = time_loop(kIters, [&] {
      plink::kernels::affine_acc_grad_params(dw_omp.data(), db_omp.data(),
                                             dy.data(), x.data(), rows, cols);
    });
    report("grad_params 512x1536", serial, parallel,
           dw_ref == dw_omp && db_ref == db_omp);
  }

  return 0;
}
