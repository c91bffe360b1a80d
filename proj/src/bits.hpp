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

#include <algorithm>
#include <bit>
#include <cstdint>

namespace j1j2::detail {

/// `k` with zero bits inserted at positions `lo` < `hi`.
inline std::uint64_t spread(std::uint64_t k, unsigned lo, unsigned hi) noexcept {
    const std::uint64_t lo_mask = (std::uint64_t{1} << lo) - 1;
    k = ((k & ~lo_mask) << 1) | (k & lo_mask);
    const std::uint64_t hi_mask = (std::uint64_t{1} << hi) - 1;
    return ((k & ~hi_mask) << 1) | (k & hi_mask);
}

/// Calls fn(base) for every index with both single-bit masks clear.
template <class Fn>
inline void for_each_clear_pair(std::uint64_t dim, std::uint64_t mi, std::uint64_t mj, Fn &&fn) {
    const auto bi = static_cast<unsigned>(std::countr_zero(mi));
    const auto bj = static_cast<unsigned>(std::countr_zero(mj));
    const unsigned lo = std::min(bi, bj);
    const unsigned hi = std::max(bi, bj);
    const std::uint64_t quarter = dim >> 2;
    for (std::uint64_t k = 0; k < quarter; ++k)
        fn(spread(k, lo, hi));
}

} // namespace j1j2::detail
