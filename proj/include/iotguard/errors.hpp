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
#ifndef IOTGUARD_ERRORS_HPP_
#define IOTGUARD_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace iotguard {

enum class ErrorCode {
  NonSquare,
  Asymmetric,
  SelfLoop,
  NonBinaryEntry,
  EmptyRoom,
  Unconnectable,
  InvalidSpec,
  InvalidParameter,
  DimensionMismatch,
  StepTooLarge,
  GridMismatch,
  Divergence,
  NonIndicatorInitialState,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code and, for matrix errors, the
/// offending indices (-1 when not applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int row = -1, int col = -1);

  ErrorCode code() const noexcept { return code_; }
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }

 private:
  ErrorCode code_;
  int row_;
  int col_;
};

}  // namespace iotguard

#endif  // IOTGUARD_ERRORS_HPP_
