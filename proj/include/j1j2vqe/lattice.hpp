// Copyright 2026 The j1j2vqe Authors
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
#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace j1j2 {

enum class Boundary { Open, Periodic };

std::string_view to_string(Boundary b) noexcept;
Boundary boundary_from_string(std::string_view s);

/// Undirected bond between two sites, stored with first < second.
using Edge = std::pair<std::size_t, std::size_t>;

/// Rectangular spin grid. Site (r, c) has index r * cols + c.
///
/// Nearest-neighbour edges are listed horizontal row-major, then vertical
/// row-major. Diagonal edges are listed per plaquette in row-major order,
/// down-right before down-left. With periodic boundaries the wrap-around
/// edges follow the interior ones in the same scan order, and an edge that
/// would appear twice (side length 2) is emitted once.
class Lattice {
  public:
    Lattice(std::size_t rows, std::size_t cols, Boundary boundary);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] Boundary boundary() const noexcept { return boundary_; }
    [[nodiscard]] std::size_t n_sites() const noexcept { return rows_ * cols_; }
    [[nodiscard]] std::size_t site(std::size_t r, std::size_t c) const noexcept {
        return r * cols_ + c;
    }

    [[nodiscard]] const std::vector<Edge> &nn_edges() const noexcept { return nn_; }
    [[nodiscard]] const std::vector<Edge> &nnn_edges() const noexcept { return nnn_; }

    friend bool operator==(const Lattice &, const Lattice &) = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    Boundary boundary_;
    std::vector<Edge> nn_;
    std::vector<Edge> nnn_;
};

/// Throws Error(InvalidDimensions) for a zero side, or a periodic side of 1.
Lattice build_lattice(std::size_t rows, std::size_t cols, Boundary boundary);

} // namespace j1j2
