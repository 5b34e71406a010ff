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

// Run-directory manifest: enough to re-issue a command and to tell complete
// outputs from partial ones.

#ifndef RELPARA_TOOLS_MANIFEST_H_
#define RELPARA_TOOLS_MANIFEST_H_

#include <filesystem>
#include <string>
#include <vector>

#include "relpara/records.h"

namespace relpara::cli {

std::string Sha256Hex(std::string_view bytes);
// Hash of a file, or of every regular file under a directory in path order.
std::string Sha256OfPath(const std::filesystem::path& path);

// Library versions the tool was built against.
Json VersionsJson();

class Manifest {
 public:
  // Writes manifest.json into `run_dir` immediately, flagged incomplete.
  Manifest(std::filesystem::path run_dir, std::string command,
           std::vector<std::string> argv, const Json& effective_config);

  void AddInput(const std::string& role, const std::filesystem::path& path);
  void AddOutput(const std::filesystem::path& path);
  void Finish();
  void Fail(const std::string& error_type, const std::string& message);

  const Json& json() const { return json_; }

 private:
  void Write() const;

  std::filesystem::path run_dir_;
  Json json_;
};

}  // namespace relpara::cli

#endif  // RELPARA_TOOLS_MANIFEST_H_
