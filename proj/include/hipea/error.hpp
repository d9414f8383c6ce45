// Copyright 2026 The hipea Authors
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

#ifndef HIPEA_ERROR_HPP_
#define HIPEA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hipea {

enum class Errc {
  NonSymmetric,
  ConvergenceFailure,
  NonOrthonormal,
  NotNormalized,
  Singular,
  ZeroReference,
  NotRepresentable,
  DegenerateSpectrum,
  BadDimension,
  BadQubit,
  DimensionMismatch,
  ImpossibleOutcome,
  InconsistentBranch,
  MissingPath,
  SearchSpaceTooLarge,
  AmbiguousSigns,
  ZeroEigenvalue,
  PostSelectionNull,
  ZeroVector,
  ParseError,
  IoError,
  InvalidArgument,
  TooManyQubits,
  ImpureReduction,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::NonSymmetric: return "NonSymmetric";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::NonOrthonormal: return "NonOrthonormal";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::Singular: return "Singular";
    case Errc::ZeroReference: return "ZeroReference";
    case Errc::NotRepresentable: return "NotRepresentable";
    case Errc::DegenerateSpectrum: return "DegenerateSpectrum";
    case Errc::BadDimension: return "BadDimension";
    case Errc::BadQubit: return "BadQubit";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ImpossibleOutcome: return "ImpossibleOutcome";
    case Errc::InconsistentBranch: return "InconsistentBranch";
    case Errc::MissingPath: return "MissingPath";
    case Errc::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case Errc::AmbiguousSigns: return "AmbiguousSigns";
    case Errc::ZeroEigenvalue: return "ZeroEigenvalue";
    case Errc::PostSelectionNull: return "PostSelectionNull";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::TooManyQubits: return "TooManyQubits";
    case Errc::ImpureReduction: return "ImpureReduction";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace hipea

#endif  // HIPEA_ERROR_HPP_
