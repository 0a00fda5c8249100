// Copyright 2026 The paritysim Authors
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

#include "paritysim/errors.h"

using namespace paritysim;

std::string_view paritysim::error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::UnnormalizedState:
            return "UnnormalizedState";
        case ErrorCode::NonUnitary:
            return "NonUnitary";
        case ErrorCode::ZeroProbabilityBranch:
            return "ZeroProbabilityBranch";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::LevelTooLow:
            return "LevelTooLow";
        case ErrorCode::LevelTooLarge:
            return "LevelTooLarge";
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::SizeTooSmall:
            return "SizeTooSmall";
        case ErrorCode::InvalidStrategy:
            return "InvalidStrategy";
        case ErrorCode::ZeroTrials:
            return "ZeroTrials";
        case ErrorCode::EmptySpace:
            return "EmptySpace";
    }
    return "Unknown";
}
