// Copyright 2026 The quadflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadflip {

enum class ErrorCode {
  NotSkew,
  NonUnitAxis,
  TooFarFromSO3,
  AntipodalSingularity,
  OutOfBarrierDomain,
  InvalidGains,
  DegenerateThrust,
  GimbalDegenerate,
  SingularFit,
  OutOfWindow,
  NonFiniteState,
  EmptyLog,
  ConfigError,
  MismatchedPlans,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::NonUnitAxis: return "NonUnitAxis";
    case ErrorCode::TooFarFromSO3: return "TooFarFromSO3";
    case ErrorCode::AntipodalSingularity: return "AntipodalSingularity";
    case ErrorCode::OutOfBarrierDomain: return "OutOfBarrierDomain";
    case ErrorCode::InvalidGains: return "InvalidGains";
    case ErrorCode::DegenerateThrust: return "DegenerateThrust";
    case ErrorCode::GimbalDegenerate: return "GimbalDegenerate";
    case ErrorCode::SingularFit: return "SingularFit";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::EmptyLog: return "EmptyLog";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::MismatchedPlans: return "MismatchedPlans";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace quadflip
