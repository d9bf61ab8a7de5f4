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

#include <cmath>

#include "tables.hpp"

namespace tre::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

double combine(const double (&acc)[kLanes]) {
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) acc[k] += a[i + k] * b[i + k];
  }
  double s = combine(acc);
  for (std::size_t i = body; i < n; ++i) s += a[i] * b[i];
  return s;
}

double l1_distance(const double* a, const double* b, std::size_t n) {
  double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) {
      acc[k] += std::fabs(a[i + k] - b[i + k]);
    }
  }
  double s = combine(acc);
  for (std::size_t i = body; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double squared_l2_distance(const double* a, const double* b, std::size_t n) {
  double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) {
      const double d = a[i + k] - b[i + k];
      acc[k] += d * d;
    }
  }
  double s = combine(acc);
  for (std::size_t i = body; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void sign_diff(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    out[i] = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  }
}

void scaled_diff(double alpha, const double* a, const double* b, double* out,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * (a[i] - b[i]);
}

void adam_update(const AdamStep& step, double* params, const double* grads,
                 double* m, double* v, std::size_t n) {
  const double one_minus_b1 = 1.0 - step.beta1;
  const double one_minus_b2 = 1.0 - step.beta2;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    m[i] = step.beta1 * m[i] + one_minus_b1 * g;
    v[i] = step.beta2 * v[i] + one_minus_b2 * (g * g);
    const double m_hat = m[i] / step.bias_correction1;
    const double v_hat = v[i] / step.bias_correction2;
    params[i] -= step.learning_rate * m_hat / (std::sqrt(v_hat) + step.epsilon);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      Isa::scalar, dot,       l1_distance, squared_l2_distance, add,
      axpy,        sign_diff, scaled_diff, adam_update,
  };
  return table;
}

}  // namespace tre::kernels::detail
