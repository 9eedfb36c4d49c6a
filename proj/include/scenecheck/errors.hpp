// Copyright 2026 The scenecheck Authors
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

#ifndef SCENECHECK_ERRORS_HPP
#define SCENECHECK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scenecheck {

enum class ErrorKind {
  MalformedFile,
  IntegrityError,
  DanglingSceneRef,
  DuplicateResponse,
  EmptyCorpus,
  EmptyGroup,
  DegenerateInput,
  TooFewScenes,
  NoAntonym,
  NoScoredPairs,
  IoError,
  InvalidConfig,
};

const char* error_kind_name(ErrorKind kind);

// Every recoverable failure surfaces as an Error; kind() tells callers (and
// the CLI's error JSON) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace scenecheck

#endif  // SCENECHECK_ERRORS_HPP
