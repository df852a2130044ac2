/*
 Copyright 2026 The iotguard Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "iotguard/errors.hpp"

namespace iotguard {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::Asymmetric: return "Asymmetric";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonBinaryEntry: return "NonBinaryEntry";
    case ErrorCode::EmptyRoom: return "EmptyRoom";
    case ErrorCode::Unconnectable: return "Unconnectable";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::Divergence: return "Divergence";
    case ErrorCode::NonIndicatorInitialState: return "NonIndicatorInitialState";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, int row, int col)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      row_(row),
      col_(col) {}

}  // namespace iotguard
