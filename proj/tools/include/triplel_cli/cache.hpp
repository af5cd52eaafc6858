#pragma once

// On-disk cache: <root>/<kind>/<key>.txt holding a one-line header
// "TRIPLEL-CACHE v<version> kind=<kind> key=<key>" followed by the payload.

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

namespace triplel::cli {

class Cache {
 public:
  static constexpr int kVersion = 1;

  /// Disabled when root is empty.
  Cache(std::filesystem::path root, std::ostream* warnings, int version = kVersion);

  bool enabled() const { return !root_.empty(); }
  std::filesystem::path path(const std::string& kind, const std::string& key) const;

  /// Payload of a valid entry; stale or corrupt entries are reported and skipped.
  std::optional<std::string> get(const std::string& kind, const std::string& key) const;
  /// Atomic: writes a temporary file in the same directory, then renames it.
  void put(const std::string& kind, const std::string& key, const std::string& payload) const;

  /// get, or compute and put. `decode` validates a cached payload and may
  /// throw; a throwing payload is treated as corrupt and recomputed.
  template <class T>
  T fetch(const std::string& kind, const std::string& key, const std::function<T()>& compute,
          const std::function<std::string(const T&)>& encode, const std::function<T(const std::string&)>& decode) const {
    if (auto hit = get(kind, key)) {
      try {
        return decode(*hit);
      } catch (const std::exception& e) {
        warn("corrupt cache entry " + path(kind, key).string() + " (" + e.what() + "), recomputing");
      }
    }
    T value = compute();
    put(kind, key, encode(value));
    return value;
  }

 private:
  void warn(const std::string& message) const;
  std::string header(const std::string& kind, const std::string& key) const;

  std::filesystem::path root_;
  std::ostream* warnings_;
  int version_;
};

/// Keeps [A-Za-z0-9._,+-]; everything else becomes '_'.
std::string sanitize_key(const std::string& key);

}  // namespace triplel::cli
