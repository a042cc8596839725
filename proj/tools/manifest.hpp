#pragma once
// Run manifests: alongside every written output the CLI records the command
// line, tool version, SHA-256 digests of the inputs it read and the outputs
// it wrote, and the wall time. Two runs with the same argv must record the
// same input and output digests.

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include "northcott/errors.hpp"

namespace northcott::io {

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    if (ctx != nullptr) EVP_MD_CTX_free(ctx);
    fail(ErrorCode::InvalidInput, "digest computation failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

inline std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path + " for digest");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

struct RunManifest {
  std::vector<std::string> command;
  std::map<std::string, std::string> inputs;   // path -> sha256
  std::map<std::string, std::string> outputs;  // path -> sha256
  double wall_time_s = 0.0;

  void add_input(const std::string& path) { inputs[path] = sha256_file(path); }
  void add_output(const std::string& path) { outputs[path] = sha256_file(path); }

  // Written next to the primary output as <output>.manifest.json.
  void write(const std::string& primary_output) const {
    nlohmann::ordered_json j;
    j["version"] = kToolVersion;
    j["command"] = command;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& [path, digest] : inputs) in[path] = digest;
    j["inputs"] = std::move(in);
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [path, digest] : outputs) out[path] = digest;
    j["outputs"] = std::move(out);
    j["wall_time_s"] = wall_time_s;
    std::ofstream f(primary_output + ".manifest.json", std::ios::binary);
    if (!f) fail(ErrorCode::InvalidInput, "cannot write manifest for " + primary_output);
    f << j.dump(2) << "\n";
  }
};

}  // namespace northcott::io
