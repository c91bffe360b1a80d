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
#include "j1j2vqe/error.hpp"

namespace j1j2 {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidDimensions: return "invalid-dimensions";
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::EqualIndices: return "equal-indices";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NonNormalizedState: return "non-normalized-state";
    case ErrorCode::CapExceeded: return "cap-exceeded";
    case ErrorCode::ParameterLengthMismatch: return "parameter-length-mismatch";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::ZeroGap: return "zero-gap";
    case ErrorCode::NonFiniteObjective: return "non-finite-objective";
    case ErrorCode::NonPositiveCoordinate: return "nonpositive-coordinate";
    case ErrorCode::InsufficientPoints: return "insufficient-points";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::EmptyInput: return "empty-input";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

} // namespace j1j2
