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

#ifndef PLINK_CORE_KERNELS_HPP_
#define PLINK_CORE_KERNELS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>

// Dense kernels used by the encoder pooling and the ranker forward/backward
// passes.  The default entry points parallelize with OpenMP over independent
// output elements only, so results are bit-identical to the serial reference
// in kernels::ref for any thread count.  The reference versions stay as the
// test oracle and the baseline for the kernel benchmark.

namespace plink::kernels {

// Loops below this many scalar operations run serially; tiny training
// configs would otherwise pay more for thread wakeup than for the math.
inline constexpr size_t kParallelGrain = 1 << 14;

namespace ref {

// y = W x + b.  W is row-major rows x cols.
template <typename T>
void affine(const T* w, const T* b, const T* x, T* y, size_t rows,
            size_t cols) {
  for (size_t r = 0; r < rows; ++r) {
    T acc = b[r];
    const T* row = w + r * cols;
    for (size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

// dx = W^T dy.
template <typename T>
void affine_grad_input(const T* w, const T* dy, T* dx, size_t rows,
                       size_t cols) {
  for (size_t c = 0; c < cols; ++c) {
    T acc = T(0);
    for (size_t r = 0; r < rows; ++r) acc += w[r * cols + c] * dy[r];
    dx[c] = acc;
  }
}

// dW += dy x^T, db += dy.
template <typename T>
void affine_acc_grad_params(T* dw, T* db, const T* dy, const T* x, size_t rows,
                            size_t cols) {
  for (size_t r = 0; r < rows; ++r) {
    T* row = dw + r * cols;
    const T g = dy[r];
    for (size_t c = 0; c < cols; ++c) row[c] += g * x[c];
    db[r] += g;
  }
}

// out[j] = max over the n row vectors of component j.  n must be >= 1.
template <typename T>
void max_pool(const T* vecs, size_t n, size_t dim, T* out) {
  for (size_t j = 0; j < dim; ++j) {
    T best = vecs[j];
    for (size_t i = 1; i < n; ++i) best = std::max(best, vecs[i * dim + j]);
    out[j] = best;
  }
}

}  // namespace ref

template <typename T>
void affine(const T* w, const T* b, const T* x, T* y, size_t rows,
            size_t cols) {
  const bool par = rows * cols >= kParallelGrain;
#pragma omp parallel for schedule(static) if (par)
  for (long long r = 0; r < static_cast<long long>(rows); ++r) {
    const size_t ur = static_cast<size_t>(r);
    T acc = b[ur];
    const T* row = w + ur * cols;
    for (size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[ur] = acc;
  }
}

template <typename T>
void affine_grad_input(const T* w, const T* dy, T* dx, size_t rows,
                       size_t cols) {
  const bool par = rows * cols >= kParallelGrain;
#pragma omp parallel for schedule(static) if (par)
  for (long long c = 0; c < static_cast<long long>(cols); ++c) {
    const size_t uc = static_cast<size_t>(c);
    T acc = T(0);
    for (size_t r = 0; r < rows; ++r) acc += w[r * cols + uc] * dy[r];
    dx[uc] = acc;
  }
}

template <typename T>
void affine_acc_grad_params(T* dw, T* db, const T* dy, const T* x, size_t rows,
                            size_t cols) {
  const bool par = rows * cols >= kParallelGrain;
#pragma omp parallel for schedule(static) if (par)
  for (long long r = 0; r < static_cast<long long>(rows); ++r) {
    const size_t ur = static_cast<size_t>(r);
    T* row = dw + ur * cols;
    const T g = dy[ur];
    for (size_t c = 0; c < cols; ++c) row[c] += g * x[c];
    db[ur] += g;
  }
}

template <typename T>
void max_pool(const T* vecs, size_t n, size_t dim, T* out) {
  const bool par = n * dim >= kParallelGrain;
#pragma omp parallel for schedule(static) if (par)
  for (long long j = 0; j < static_cast<long long>(dim); ++j) {
    const size_t uj = static_cast<size_t>(j);
    T best = vecs[uj];
    for (size_t i = 1; i < n; ++i) best = std::max(best, vecs[i * dim + uj]);
    out[uj] = best;
  }
}

template <typename T>
void relu(T* x, size_t n) {
  for (size_t i = 0; i < n; ++i) x[i] = x[i] > T(0) ? x[i] : T(0);
}

// dx_i = dy_i when the forward pre-activation was positive, else 0.
template <typename T>
void relu_backward(const T* preact, const T* dy, T* dx, size_t n) {
  for (size_t i = 0; i < n; ++i) dx[i] = preact[i] > T(0) ? dy[i] : T(0);
}

// Cosine similarity; accumulates in double regardless of T.
template <typename T>
double cosine(const T* a, const T* b, size_t n) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < n; ++i) {
    dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    na += static_cast<double>(a[i]) * static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]) * static_cast<double>(b[i]);
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace plink::kernels

#endif  // PLINK_CORE_KERNELS_HPP_
