// Copyright 2026 The corrhss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <random>

#include "corrhss/qmat.hpp"

namespace corrhss::testing {

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  ComplexMatrix x(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    x(r, r) = normal(gen);
    for (std::size_t c = r + 1; c < dim; ++c) {
      x(r, c) = complex(normal(gen), normal(gen));
      x(c, r) = std::conj(x(r, c));
    }
  }
  return x;
}

inline PauliString random_pauli(std::size_t n, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<std::uint8_t> idx(n);
  for (auto& i : idx) i = static_cast<std::uint8_t>(pick(gen));
  return PauliString(idx);
}

}  // namespace corrhss::testing
