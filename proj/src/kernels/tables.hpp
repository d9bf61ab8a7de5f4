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

#ifndef TRE_SRC_KERNELS_TABLES_HPP_
#define TRE_SRC_KERNELS_TABLES_HPP_

#include "tre/kernels.hpp"

namespace tre::kernels::detail {

const KernelTable& scalar_table();
// nullptr when the variant was not compiled into this build.
const KernelTable* avx2_table();
const KernelTable* neon_table();

}  // namespace tre::kernels::detail

#endif  // TRE_SRC_KERNELS_TABLES_HPP_
