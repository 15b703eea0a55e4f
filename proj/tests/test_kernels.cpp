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

#include <doctest.h>

#include <vector>

#include "plink/core/kernels.hpp"
#include "plink/core/rng.hpp"
#include "test_support.hpp"

using namespace plink;

TEST_CASE("openmp kernels match the serial reference bitwise") {
  Rng rng(7);
  // Sizes straddle the parallel grain so both paths are exercised.
  for (size_t rows : {3u, 80u, 300u}) {
    for (size_t cols : {5u, 64u, 257u}) {
      const auto w = test::random_vec<float>(rows * cols, rng);
      const auto b = test::random_vec<float>(rows, rng);
      const auto x = test::random_vec<float>(cols, rng);
      std::vector<float> y_ref(rows), y(rows);
      kernels::ref::affine(w.data(), b.data(), x.data(), y_ref.data(), rows,
                           cols);
      kernels::affine(w.data(), b.data(), x.data(), y.data(), rows, cols);
      CHECK(y == y_ref);

      const auto dy = test::random_vec<float>(rows, rng);
      std::vector<float> dx_ref(cols), dx(cols);
      kernels::ref::affine_grad_input(w.data(), dy.data(), dx_ref.data(), rows,
                                      cols);
      kernels::affine_grad_input(w.data(), dy.data(), dx.data(), rows, cols);
      CHECK(dx == dx_ref);

      std::vector<float> dw_ref(rows * cols, 1.0f), db_ref(rows, 1.0f);
      std::vector<float> dw(rows * cols, 1.0f), db(rows, 1.0f);
      kernels::ref::affine_acc_grad_params(dw_ref.data(), db_ref.data(),
                                           dy.data(), x.data(), rows, cols);
      kernels::affine_acc_grad_params(dw.data(), db.data(), dy.data(),
                                      x.data(), rows, cols);
      CHECK(dw == dw_ref);
      CHECK(db == db_ref);
    }
  }
}

TEST_CASE("max pooling equals per-component brute force") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 1 + rng.below(40);
    const size_t dim = 1 + rng.below(50);
    const auto vecs = test::random_vec<float>(n * dim, rng, -5.0, 5.0);
    std::vector<float> out(dim), out_ref(dim);
    kernels::max_pool(vecs.data(), n, dim, out.data());
    kernels::ref::max_pool(vecs.data(), n, dim, out_ref.data());
    CHECK(out == out_ref);
    // Independent brute force, written as plainly as possible.
    for (size_t j = 0; j < dim; ++j) {
      float best = vecs[j];
      for (size_t i = 0; i < n; ++i)
        if (vecs[i * dim + j] > best) best = vecs[i * dim + j];
      CHECK(out[j] == best);
    }
  }
}

TEST_CASE("cosine basics") {
  const std::vector<float> a{1.0f, 0.0f}, b{0.0f, 1.0f};
  CHECK(kernels::cosine(a.data(), a.data(), 2) == doctest::Approx(1.0));
  CHECK(kernels::cosine(a.data(), b.data(), 2) == doctest::Approx(0.0));
  const std::vector<float> na{-1.0f, 0.0f};
  CHECK(kernels::cosine(a.data(), na.data(), 2) == doctest::Approx(-1.0));
}
