// Copyright 2026 The sparsemp Authors
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

#ifndef SPARSEMP_ERRORS_HPP_
#define SPARSEMP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace smp {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDimensionMismatch,
  kInfeasible,
  kRankDeficient,
  kParse,
  kIo,
  kDiverged,
  kUnknownMethod,
};

// All recoverable failures in the library raise this type; the C API maps
// ErrorCode onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace smp

#endif  // SPARSEMP_ERRORS_HPP_
