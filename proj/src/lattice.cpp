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
#include "j1j2vqe/lattice.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "j1j2vqe/error.hpp"

namespace j1j2 {

std::string_view to_string(Boundary b) noexcept {
    return b == Boundary::Open ? "open" : "periodic";
}

Boundary boundary_from_string(std::string_view s) {
    if (s == "open")
        return Boundary::Open;
    if (s == "periodic")
        return Boundary::Periodic;
    throw Error(ErrorCode::InvalidConfig,
                "boundary must be \"open\" or \"periodic\", got \"" + std::string(s) + "\"");
}

namespace {

class EdgeList {
  public:
    explicit EdgeList(std::vector<Edge> &out) : out_(out) {}

    void add(std::size_t a, std::size_t b) {
        Edge e = std::minmax(a, b);
        if (seen_.insert(e).second)
            out_.push_back(e);
    }

  private:
    std::vector<Edge> &out_;
    std::set<Edge> seen_;
};

} // namespace

Lattice::Lattice(std::size_t rows, std::size_t cols, Boundary boundary)
    : rows_(rows), cols_(cols), boundary_(boundary) {
    if (rows == 0 || cols == 0)
        throw Error(ErrorCode::InvalidDimensions, "lattice sides must be positive");
    if (boundary == Boundary::Periodic && (rows < 2 || cols < 2))
        throw Error(ErrorCode::InvalidDimensions,
                    "periodic lattice needs both sides >= 2");

    EdgeList nn(nn_);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c + 1 < cols; ++c)
            nn.add(site(r, c), site(r, c + 1));
    for (std::size_t r = 0; r + 1 < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            nn.add(site(r, c), site(r + 1, c));

    EdgeList nnn(nnn_);
    for (std::size_t r = 0; r + 1 < rows; ++r) {
        for (std::size_t c = 0; c + 1 < cols; ++c) {
            nnn.add(site(r, c), site(r + 1, c + 1));
            nnn.add(site(r, c + 1), site(r + 1, c));
        }
    }

    if (boundary == Boundary::Periodic) {
        for (std::size_t r = 0; r < rows; ++r)
            nn.add(site(r, cols - 1), site(r, 0));
        for (std::size_t c = 0; c < cols; ++c)
            nn.add(site(rows - 1, c), site(0, c));

        // Wrap plaquettes: those whose lower or right neighbour crosses a seam.
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                if (r + 1 < rows && c + 1 < cols)
                    continue;
                const std::size_t r1 = (r + 1) % rows;
                const std::size_t c1 = (c + 1) % cols;
                nnn.add(site(r, c), site(r1, c1));
                nnn.add(site(r, c1), site(r1, c));
            }
        }
    }
}

Lattice build_lattice(std::size_t rows, std::size_t cols, Boundary boundary) {
    return Lattice(rows, cols, boundary);
}

} // namespace j1j2
