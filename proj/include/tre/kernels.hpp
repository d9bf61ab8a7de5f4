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

#ifndef TRE_KERNELS_HPP_
#define TRE_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops used by the distance, composition and optimizer
// code. Every instruction-set variant produces bit-identical results to the
// scalar reference: elementwise kernels perform the same IEEE operations,
// and reductions accumulate into four interleaved lanes (element i goes to
// lane i % 4 over the largest multiple-of-four prefix), combine them as
// (l0 + l1) + (l2 + l3), then add the tail in index order.
namespace tre::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct AdamStep {
  double learning_rate;
  double beta1;
  double beta2;
  double epsilon;
  // 1 - beta^t for the current step t.
  double bias_correction1;
  double bias_correction2;
};

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*l1_distance)(const double* a, const double* b, std::size_t n);
  double (*squared_l2_distance)(const double* a, const double* b,
                                std::size_t n);
  // out = a + b
  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out = sign(a - b), 0 on ties
  void (*sign_diff)(const double* a, const double* b, double* out,
                    std::size_t n);
  // out = alpha * (a - b)
  void (*scaled_diff)(double alpha, const double* a, const double* b,
                      double* out, std::size_t n);
  void (*adam_update)(const AdamStep& step, double* params,
                      const double* grads, double* m, double* v,
                      std::size_t n);
};

bool isa_available(Isa isa);

// Table for a specific instruction set. Throws tre::Error if unavailable.
const KernelTable& kernels_for(Isa isa);

// The table used by the library; picked from CPU features on first use.
const KernelTable& active();

// Overrides the runtime choice. Throws tre::Error if unavailable.
void force_isa(Isa isa);

// Span conveniences over active(). Lengths must match.
double dot(std::span<const double> a, std::span<const double> b);
double l1_distance(std::span<const double> a, std::span<const double> b);
double squared_l2_distance(std::span<const double> a,
                           std::span<const double> b);
void add(std::span<const double> a, std::span<const double> b,
         std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace tre::kernels

#endif  // TRE_KERNELS_HPP_
