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

#include "manifest.h"

#include <Eigen/Core>
#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "relpara/errors.h"

#ifndef RELPARA_VERSION
#define RELPARA_VERSION "unknown"
#endif

namespace relpara::cli {
namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("sha256 init failed");
    }
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void Update(const char* data, std::size_t n) { EVP_DigestUpdate(ctx_, data, n); }

  std::string HexDigest() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md.data(), &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += kHex[md[i] >> 4];
      out += kHex[md[i] & 15];
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

void HashFile(const std::filesystem::path& path, Sha256& h) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInputError("cannot read " + path.string());
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    h.Update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
}

}  // namespace

std::string Sha256Hex(std::string_view bytes) {
  Sha256 h;
  h.Update(bytes.data(), bytes.size());
  return h.HexDigest();
}

std::string Sha256OfPath(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw MissingInputError("input not found: " + path.string());
  Sha256 h;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(path)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const std::string rel = fs::relative(f, path).generic_string();
      h.Update(rel.data(), rel.size() + 1);  // include the terminator as a separator
      HashFile(f, h);
    }
  } else {
    HashFile(path, h);
  }
  return h.HexDigest();
}

Json VersionsJson() {
  return {{"relpara", RELPARA_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"openssl", OPENSSL_VERSION_TEXT},
          {"cli11", CLI11_VERSION}};
}

Manifest::Manifest(std::filesystem::path run_dir, std::string command,
                   std::vector<std::string> argv, const Json& effective_config)
    : run_dir_(std::move(run_dir)) {
  std::filesystem::create_directories(run_dir_);
  json_ = {{"command", command},
           {"argv", argv},
           {"config", effective_config},
           {"config_hash", Sha256Hex(effective_config.dump())},
           {"seeds", effective_config.at("seeds")},
           {"inputs", Json::object()},
           {"outputs", Json::array()},
           {"versions", VersionsJson()},
           {"complete", false}};
  Write();
}

void Manifest::AddInput(const std::string& role, const std::filesystem::path& path) {
  json_["inputs"][role] = {{"path", path.string()}, {"sha256", Sha256OfPath(path)}};
  Write();
}

void Manifest::AddOutput(const std::filesystem::path& path) {
  json_["outputs"].push_back(
      std::filesystem::relative(path, run_dir_).generic_string());
}

void Manifest::Finish() {
  json_["complete"] = true;
  Write();
}

void Manifest::Fail(const std::string& error_type, const std::string& message) {
  json_["complete"] = false;
  json_["error"] = {{"type", error_type}, {"message", message}};
  Write();
}

void Manifest::Write() const { WriteJson(run_dir_ / "manifest.json", json_); }

}  // namespace relpara::cli
