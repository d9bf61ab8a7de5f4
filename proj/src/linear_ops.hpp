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

#ifndef TRE_SRC_LINEAR_OPS_HPP_
#define TRE_SRC_LINEAR_OPS_HPP_

#include <cstddef>

#include "tre/kernels.hpp"
#include "tre/space.hpp"

// Row-mixing products behind linear composition and its adjoints. Operands
// are rows x cols row-major blocks; the mixing matrix is rows x rows.
namespace tre::detail {

// out += m * x
inline void mix_rows_acc(const Matrix& m, const double* x, double* out,
                         std::size_t rows, std::size_t cols) {
  const auto& k = kernels::active();
  if (cols == 1) {
    for (std::size_t i = 0; i < rows; ++i) {
      out[i] += k.dot(m.values.data() + i * rows, x, rows);
    }
    return;
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      k.axpy(m(i, j), x + j * cols, out + i * cols, cols);
    }
  }
}

// out += m^T * x
inline void mix_rows_transposed_acc(const Matrix& m, const double* x,
                                    double* out, std::size_t rows,
                                    std::size_t cols) {
  const auto& k = kernels::active();
  if (cols == 1) {
    for (std::size_t i = 0; i < rows; ++i) {
      k.axpy(x[i], m.values.data() + i * rows, out, rows);
    }
    return;
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      k.axpy(m(i, j), x + i * cols, out + j * cols, cols);
    }
  }
}

// out (rows x rows) += g * x^T
inline void outer_acc(const double* g, const double* x, double* out,
                      std::size_t rows, std::size_t cols) {
  const auto& k = kernels::active();
  if (cols == 1) {
    for (std::size_t i = 0; i < rows; ++i) k.axpy(g[i], x, out + i * rows, rows);
    return;
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      out[i * rows + j] += k.dot(g + i * cols, x + j * cols, cols);
    }
  }
}

}  // namespace tre::detail

#endif  // TRE_SRC_LINEAR_OPS_HPP_
