#include "manifest.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "lmoment/errors.hpp"
#include "lmoment/version.hpp"

namespace lmoment::cli {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
  std::array<char, 1 << 15> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

ManifestBuilder::ManifestBuilder(std::string command) {
  manifest_.command = std::move(command);
  manifest_.version = kVersion;
}

void ManifestBuilder::add_input(const std::string& path) { manifest_.input_digests.emplace_back(path, sha256_file(path)); }

void ManifestBuilder::set_tolerances(const SolverConfig& config) { manifest_.tolerances = json::to_json(config); }

void ManifestBuilder::set_tolerances(nlohmann::json tolerances) { manifest_.tolerances = std::move(tolerances); }

void ManifestBuilder::stage(const std::string& name) {
  const auto now = std::chrono::steady_clock::now();
  if (!current_.empty()) manifest_.stage_seconds.emplace_back(current_, std::chrono::duration<double>(now - started_).count());
  current_ = name;
  started_ = now;
}

json::RunManifest ManifestBuilder::finish() {
  stage("");
  return manifest_;
}

std::string join_argv(int argc, const char* const* argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    const std::string arg = argv[i];
    const bool plain = !arg.empty() && arg.find_first_not_of(
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_./=:,+@%") == std::string::npos;
    if (plain) {
      out += arg;
      continue;
    }
    // POSIX single quoting so the recorded command can be pasted back into a shell.
    out += '\'';
    for (char ch : arg) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
    out += '\'';
  }
  return out;
}

}  // namespace lmoment::cli
