#include "triplel_cli/cache.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace triplel::cli {

std::string sanitize_key(const std::string& key) {
  std::string out = key;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                    c == '_' || c == ',' || c == '+' || c == '-';
    if (!ok) c = '_';
  }
  return out;
}

Cache::Cache(std::filesystem::path root, std::ostream* warnings, int version)
    : root_(std::move(root)), warnings_(warnings), version_(version) {}

std::filesystem::path Cache::path(const std::string& kind, const std::string& key) const {
  return root_ / kind / (sanitize_key(key) + ".txt");
}

std::string Cache::header(const std::string& kind, const std::string& key) const {
  return "TRIPLEL-CACHE v" + std::to_string(version_) + " kind=" + kind + " key=" + key + "\n";
}

void Cache::warn(const std::string& message) const {
  if (warnings_) *warnings_ << "warning: " << message << "\n";
}

std::optional<std::string> Cache::get(const std::string& kind, const std::string& key) const {
  if (!enabled()) return std::nullopt;
  const auto p = path(kind, key);
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string expected = header(kind, key);
  if (text.compare(0, expected.size(), expected) != 0) {
    if (text.rfind("TRIPLEL-CACHE v", 0) == 0 && text.rfind("TRIPLEL-CACHE v" + std::to_string(version_) + " ", 0) != 0)
      warn("stale cache entry " + p.string() + ", recomputing");
    else
      warn("corrupt cache entry " + p.string() + ", recomputing");
    return std::nullopt;
  }
  return text.substr(expected.size());
}

void Cache::put(const std::string& kind, const std::string& key, const std::string& payload) const {
  if (!enabled()) return;
  static std::atomic<unsigned> counter{0};
  const auto p = path(kind, key);
  std::error_code ec;
  std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) {
    warn("cannot create cache directory " + p.parent_path().string() + ": " + ec.message());
    return;
  }
  auto tmp = p;
  tmp += ".tmp" + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << header(kind, key) << payload;
    if (!out) {
      warn("cannot write cache entry " + tmp.string());
      return;
    }
  }
  std::filesystem::rename(tmp, p, ec);
  if (ec) {
    warn("cannot install cache entry " + p.string() + ": " + ec.message());
    std::filesystem::remove(tmp, ec);
  }
}

}  // namespace triplel::cli
