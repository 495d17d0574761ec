// Copyright 2026 The steprag Authors.
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

#ifndef STEPRAG_ERRORS_HPP_
#define STEPRAG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace steprag {

// Invariant violations on construction. All derive from std::invalid_argument
// so callers that only care about "bad input" can catch one type.
class InconsistentTrajectory : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IncompatibleLabel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyGoldenList : public std::invalid_argument {
 public:
  EmptyGoldenList() : std::invalid_argument("golden answer list is empty") {}
};

class BoundsViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingLabels : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FormatNotOk : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DuplicateId : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoMutationSite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Runtime failures of an external (or scripted) backend. Detection turns these
// into Unjudged labels; rollout turns them into per-question error records.
class BackendUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace steprag

#endif  // STEPRAG_ERRORS_HPP_
