// Copyright 2026 The skg Authors.
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace skg {

enum class Errc {
  DuplicateEntity,
  UnknownEntity,
  KindViolation,
  WrongKind,
  FatalEncoding,
  ConflictingRecord,
  MethodKindMismatch,
  EmptyRelatednessSet,
  InvalidParameter,
  KTooLarge,
  EmptyPartition,
  UniverseMismatch,
  DegenerateSplit,
  NoPredictions,
  InvalidSpec,
  Io,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateEntity: return "DuplicateEntity";
    case Errc::UnknownEntity: return "UnknownEntity";
    case Errc::KindViolation: return "KindViolation";
    case Errc::WrongKind: return "WrongKind";
    case Errc::FatalEncoding: return "FatalEncoding";
    case Errc::ConflictingRecord: return "ConflictingRecord";
    case Errc::MethodKindMismatch: return "MethodKindMismatch";
    case Errc::EmptyRelatednessSet: return "EmptyRelatednessSet";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::EmptyPartition: return "EmptyPartition";
    case Errc::UniverseMismatch: return "UniverseMismatch";
    case Errc::DegenerateSplit: return "DegenerateSplit";
    case Errc::NoPredictions: return "NoPredictions";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

// All library failures are reported through this exception; code() carries
// the machine-readable category.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace skg
