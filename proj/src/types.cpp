// Copyright 2026 The pmlab Authors
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

#include "pmlab/types.hpp"

#include <numeric>

namespace pmlab {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("Matrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

bool is_bijection(std::span<const std::size_t> map) {
  std::vector<char> seen(map.size(), 0);
  for (std::size_t v : map) {
    if (v >= map.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  if (!is_bijection(map_)) throw InputError("Permutation: map is not a bijection");
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t j = 0; j < map_.size(); ++j) inv[map_[j]] = j;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw InputError("Permutation::compose: length mismatch");
  std::vector<std::size_t> out(map_.size());
  for (std::size_t j = 0; j < map_.size(); ++j) out[j] = map_[other[j]];
  return Permutation(std::move(out));
}

std::string Permutation::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < map_.size(); ++j) {
    if (j) s += ' ';
    s += std::to_string(map_[j] + 1);
  }
  return s + ")";
}

}  // namespace pmlab
