// Copyright 2026 The relpara Authors.
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

#ifndef RELPARA_ERRORS_H_
#define RELPARA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace relpara {

// Precondition violations throw std::invalid_argument. The classes below
// cover failures that the command-line tool maps to distinct exit codes.

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class MissingInputError : public std::runtime_error {
 public:
  explicit MissingInputError(const std::string& what)
      : std::runtime_error(what) {}
};

// An NLI, similarity or paraphrasing backend could not answer.
class BackendError : public std::runtime_error {
 public:
  explicit BackendError(const std::string& what) : std::runtime_error(what) {}
};

// A decoder could not complete a sequence (e.g. max_len < min_len after the
// prefix, or every candidate token was masked).
class DecodeError : public std::runtime_error {
 public:
  explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relpara

#endif  // RELPARA_ERRORS_H_
