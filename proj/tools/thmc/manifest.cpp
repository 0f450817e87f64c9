#include "manifest.hpp"

#include <openssl/evp.h>

#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#ifndef THMC_VERSION
#define THMC_VERSION "unknown"
#endif

namespace thmc::cli {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
      throw std::runtime_error("sha256: init failed");
  }
  void update(const char* data, std::size_t n) {
    if (EVP_DigestUpdate(ctx_.get(), data, n) != 1) throw std::runtime_error("sha256: update failed");
  }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), md, &len) != 1) throw std::runtime_error("sha256: final failed");
    std::ostringstream out;
    for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return out.str();
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  Sha256 h;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    h.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

Manifest::Manifest(std::string command)
    : command_(std::move(command)), started_(utc_now()), start_(std::chrono::steady_clock::now()) {}

void Manifest::input(const std::filesystem::path& path) {
  inputs_.push_back({{"path", path.string()},
                     {"sha256", sha256_file(path)},
                     {"bytes", std::to_string(std::filesystem::file_size(path))}});
}

nlohmann::json Manifest::to_json(int exit_status) const {
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  nlohmann::json j{{"command", command_},
                   {"version", THMC_VERSION},
                   {"parameters", params_},
                   {"inputs", inputs_},
                   {"outputs", outputs_},
                   {"started_at", started_},
                   {"wall_clock_seconds", seconds},
                   {"exit_status", exit_status}};
  if (!error_.empty()) j["error"] = error_;
  return j;
}

std::filesystem::path Manifest::write(const std::filesystem::path& dir, int exit_status) const {
  std::filesystem::create_directories(dir);
  const auto path = dir / (command_ + ".manifest.json");
  std::ofstream out(path);
  out << to_json(exit_status).dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return path;
}

}  // namespace thmc::cli
