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

#include <atomic>
#include <cassert>
#include <string>

#include "tables.hpp"
#include "tre/error.hpp"

namespace tre::kernels {
namespace detail {

#ifndef TRE_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
#ifndef TRE_HAVE_NEON
const KernelTable* neon_table() { return nullptr; }
#endif

}  // namespace detail

namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(TRE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
      // Advanced SIMD is mandatory on AArch64.
      return detail::neon_table() != nullptr;
  }
  return false;
}

const KernelTable* pick_best() {
  if (cpu_has(Isa::avx2)) return detail::avx2_table();
  if (cpu_has(Isa::neon)) return detail::neon_table();
  return &detail::scalar_table();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{pick_best()};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) { return cpu_has(isa); }

const KernelTable& kernels_for(Isa isa) {
  if (!cpu_has(isa)) {
    throw Error("kernel variant '" + std::string(isa_name(isa)) +
                "' is not available on this machine");
  }
  switch (isa) {
    case Isa::avx2:
      return *detail::avx2_table();
    case Isa::neon:
      return *detail::neon_table();
    case Isa::scalar:
      break;
  }
  return detail::scalar_table();
}

const KernelTable& active() {
  return *active_slot().load(std::memory_order_acquire);
}

void force_isa(Isa isa) {
  active_slot().store(&kernels_for(isa), std::memory_order_release);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().l1_distance(a.data(), b.data(), a.size());
}

double squared_l2_distance(std::span<const double> a,
                           std::span<const double> b) {
  assert(a.size() == b.size());
  return active().squared_l2_distance(a.data(), b.data(), a.size());
}

void add(std::span<const double> a, std::span<const double> b,
         std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().add(a.data(), b.data(), out.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace tre::kernels
