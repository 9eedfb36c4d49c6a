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

#include "scenecheck/errors.hpp"

namespace scenecheck {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedFile:
      return "MalformedFile";
    case ErrorKind::IntegrityError:
      return "IntegrityError";
    case ErrorKind::DanglingSceneRef:
      return "DanglingSceneRef";
    case ErrorKind::DuplicateResponse:
      return "DuplicateResponse";
    case ErrorKind::EmptyCorpus:
      return "EmptyCorpus";
    case ErrorKind::EmptyGroup:
      return "EmptyGroup";
    case ErrorKind::DegenerateInput:
      return "DegenerateInput";
    case ErrorKind::TooFewScenes:
      return "TooFewScenes";
    case ErrorKind::NoAntonym:
      return "NoAntonym";
    case ErrorKind::NoScoredPairs:
      return "NoScoredPairs";
    case ErrorKind::IoError:
      return "IoError";
    case ErrorKind::InvalidConfig:
      return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace scenecheck
