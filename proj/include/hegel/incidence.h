// Copyright 2026 The hegel Authors.
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

#ifndef HEGEL_INCIDENCE_H_
#define HEGEL_INCIDENCE_H_

#include <cstdint>
#include <vector>

namespace hegel {

// A block of binary incidence columns over `rows` sentence nodes, stored as
// sorted member lists (column j has a 1 at each row in columns[j]).
struct IncidenceBlock {
  std::size_t rows = 0;
  std::vector<std::vector<std::uint32_t>> columns;

  std::size_t cols() const { return columns.size(); }
  bool at(std::size_t row, std::size_t col) const;
  std::vector<std::size_t> row_sums() const;
  bool operator==(const IncidenceBlock&) const = default;
};

}  // namespace hegel

#endif  // HEGEL_INCIDENCE_H_
