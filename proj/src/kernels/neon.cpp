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

// AArch64 Advanced SIMD variant. Two float64x2 registers hold the four
// reduction lanes so results match the scalar reference bit for bit.

#include <arm_neon.h>

#include <cmath>

#include "tables.hpp"

namespace tre::kernels::detail {
namespace {

constexpr std::size_t kBlock = 4;

inline double reduce_lanes(float64x2_t lo, float64x2_t hi) {
  return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
         (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  const std::size_t body = n - n % kBlock;
  for (std::size_t i = 0; i < body; i += kBlock) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double s = reduce_lanes(lo, hi);
  for (std::size_t i = body; i < n; ++i) s += a[i] * b[i];
  return s;
}

double l1_distance(const double* a, const double* b, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  const std::size_t body = n - n % kBlock;
  for (std::size_t i = 0; i < body; i += kBlock) {
    lo = vaddq_f64(lo, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    hi = vaddq_f64(hi, vabdq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double s = reduce_lanes(lo, hi);
  for (std::size_t i = body; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double squared_l2_distance(const double* a, const double* b, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  const std::size_t body = n - n % kBlock;
  for (std::size_t i = 0; i < body; i += kBlock) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    lo = vaddq_f64(lo, vmulq_f64(d0, d0));
    hi = vaddq_f64(hi, vmulq_f64(d1, d1));
  }
  double s = reduce_lanes(lo, hi);
  for (std::size_t i = body; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void sign_diff(const double* a, const double* b, double* out, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const uint64x2_t one = vreinterpretq_u64_f64(vdupq_n_f64(1.0));
  const uint64x2_t minus_one = vreinterpretq_u64_f64(vdupq_n_f64(-1.0));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const uint64x2_t pos = vandq_u64(vcgtq_f64(d, zero), one);
    const uint64x2_t neg = vandq_u64(vcltq_f64(d, zero), minus_one);
    vst1q_f64(out + i, vreinterpretq_f64_u64(vorrq_u64(pos, neg)));
  }
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    out[i] = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  }
}

void scaled_diff(double alpha, const double* a, const double* b, double* out,
                 std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vmulq_f64(va, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i))));
  }
  for (; i < n; ++i) out[i] = alpha * (a[i] - b[i]);
}

void adam_update(const AdamStep& step, double* params, const double* grads,
                 double* m, double* v, std::size_t n) {
  const double one_minus_b1 = 1.0 - step.beta1;
  const double one_minus_b2 = 1.0 - step.beta2;
  const float64x2_t b1 = vdupq_n_f64(step.beta1);
  const float64x2_t b2 = vdupq_n_f64(step.beta2);
  const float64x2_t c1 = vdupq_n_f64(one_minus_b1);
  const float64x2_t c2 = vdupq_n_f64(one_minus_b2);
  const float64x2_t bc1 = vdupq_n_f64(step.bias_correction1);
  const float64x2_t bc2 = vdupq_n_f64(step.bias_correction2);
  const float64x2_t lr = vdupq_n_f64(step.learning_rate);
  const float64x2_t eps = vdupq_n_f64(step.epsilon);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t g = vld1q_f64(grads + i);
    const float64x2_t mi =
        vaddq_f64(vmulq_f64(b1, vld1q_f64(m + i)), vmulq_f64(c1, g));
    const float64x2_t vi = vaddq_f64(vmulq_f64(b2, vld1q_f64(v + i)),
                                     vmulq_f64(c2, vmulq_f64(g, g)));
    vst1q_f64(m + i, mi);
    vst1q_f64(v + i, vi);
    const float64x2_t m_hat = vdivq_f64(mi, bc1);
    const float64x2_t v_hat = vdivq_f64(vi, bc2);
    const float64x2_t denom = vaddq_f64(vsqrtq_f64(v_hat), eps);
    const float64x2_t delta = vdivq_f64(vmulq_f64(lr, m_hat), denom);
    vst1q_f64(params + i, vsubq_f64(vld1q_f64(params + i), delta));
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

const KernelTable* neon_table() {
  static const KernelTable table{
      Isa::neon, dot,       l1_distance, squared_l2_distance, add,
      axpy,      sign_diff, scaled_diff, adam_update,
  };
  return &table;
}

}  // namespace tre::kernels::detail
