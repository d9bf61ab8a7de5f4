// Copyright 2026 The TRE Authors.
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

// Compiled with -mavx2 only; entered through the runtime dispatcher after a
// CPU feature check.

#include <immintrin.h>

#include <cmath>

#include "tables.hpp"

namespace tre::kernels::detail {
namespace {

constexpr std::size_t kBlock = 4;

// Same association as the scalar reference: (l0 + l1) + (l2 + l3).
inline double reduce_lanes(__m256d acc) {
  alignas(32) double lanes[kBlock];
  _mm256_store_pd(lanes, acc);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

inline __m256d abs_pd(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t body = n - n % kBlock;
  for (std::size_t i = 0; i < body; i += kBlock) {
    const __m256d prod =
        _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, prod);
  }
  double s = reduce_lanes(acc);
  for (std::size_t i = body; i < n; ++i) s += a[i] * b[i];
  return s;
}

double l1_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t body = n - n % kBlock;
  for (std::size_t i = 0; i < body; i += kBlock) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, abs_pd(d));
  }
  double s = reduce_lanes(acc);
  for (std::size_t i = body; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double squared_l2_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t body = n - n % kBlock;
  for (std::size_t i = 0; i < body; i += kBlock) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = reduce_lanes(acc);
  for (std::size_t i = body; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void sign_diff(const double* a, const double* b, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d minus_one = _mm256_set1_pd(-1.0);
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(d, zero, _CMP_GT_OQ), one);
    const __m256d neg =
        _mm256_and_pd(_mm256_cmp_pd(d, zero, _CMP_LT_OQ), minus_one);
    _mm256_storeu_pd(out + i, _mm256_or_pd(pos, neg));
  }
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    out[i] = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  }
}

void scaled_diff(double alpha, const double* a, const double* b, double* out,
                 std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(va, d));
  }
  for (; i < n; ++i) out[i] = alpha * (a[i] - b[i]);
}

void adam_update(const AdamStep& step, double* params, const double* grads,
                 double* m, double* v, std::size_t n) {
  const double one_minus_b1 = 1.0 - step.beta1;
  const double one_minus_b2 = 1.0 - step.beta2;
  const __m256d b1 = _mm256_set1_pd(step.beta1);
  const __m256d b2 = _mm256_set1_pd(step.beta2);
  const __m256d c1 = _mm256_set1_pd(one_minus_b1);
  const __m256d c2 = _mm256_set1_pd(one_minus_b2);
  const __m256d bc1 = _mm256_set1_pd(step.bias_correction1);
  const __m256d bc2 = _mm256_set1_pd(step.bias_correction2);
  const __m256d lr = _mm256_set1_pd(step.learning_rate);
  const __m256d eps = _mm256_set1_pd(step.epsilon);
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    const __m256d g = _mm256_loadu_pd(grads + i);
    const __m256d mi = _mm256_add_pd(_mm256_mul_pd(b1, _mm256_loadu_pd(m + i)),
                                     _mm256_mul_pd(c1, g));
    const __m256d vi =
        _mm256_add_pd(_mm256_mul_pd(b2, _mm256_loadu_pd(v + i)),
                      _mm256_mul_pd(c2, _mm256_mul_pd(g, g)));
    _mm256_storeu_pd(m + i, mi);
    _mm256_storeu_pd(v + i, vi);
    const __m256d m_hat = _mm256_div_pd(mi, bc1);
    const __m256d v_hat = _mm256_div_pd(vi, bc2);
    const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(v_hat), eps);
    const __m256d delta = _mm256_div_pd(_mm256_mul_pd(lr, m_hat), denom);
    _mm256_storeu_pd(params + i,
                     _mm256_sub_pd(_mm256_loadu_pd(params + i), delta));
  }
  for (; i < n; ++i) {
    const double g = grads[i];
    m[i] = step.beta1 * m[i] + one_minus_b1 * g;
    v[i] = step.beta2 * v[i] + one_minus_b2 * (g * g);
    const double m_hat = m[i] / step.bias_correction1;
    const double v_hat = v[i] / step.bias_correction2;
    params[i] -= step.learning_rate * m_hat / (std::sqrt(v_hat) + step.epsilon);
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{
      Isa::avx2, dot,       l1_distance, squared_l2_distance, add,
      axpy,      sign_diff, scaled_diff, adam_update,
  };
  return &table;
}

}  // namespace tre::kernels::detail
