#pragma once

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include "qsu2/bracket.hpp"

namespace qsu2 {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Key under which a diagram's bracket is stored; invariant under edge relabeling.
inline std::string bracket_key(const PDCode& d) { return canonical_string(relabel_canonical(d)); }

/// One file per diagram: a header line, the canonical string and the
/// serialized multiplicative bracket. Writes go through a temporary file and
/// a rename, so concurrent writers leave one complete record.
class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path path_for(const std::string& key) const {
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.bracket", static_cast<unsigned long long>(fnv1a64(key)));
    return dir_ / name;
  }

  // A record with a different canonical string (hash collision) or a
  // damaged body reads as a miss.
  std::optional<LaurentPoly> load(const std::string& key) const {
    std::ifstream in(path_for(key));
    if (!in) return std::nullopt;
    std::string header, stored, body;
    if (!std::getline(in, header) || header != kHeader) return std::nullopt;
    if (!std::getline(in, stored) || stored != key) return std::nullopt;
    if (!std::getline(in, body)) return std::nullopt;
    return LaurentPoly::deserialize(body);
  }

  // Failures are silent: the cache never affects correctness.
  void store(const std::string& key, const LaurentPoly& value) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;
    auto target = path_for(key);
    std::ostringstream tmpname;
    tmpname << target.string() << ".tmp." << ::getpid() << '.' << std::this_thread::get_id();
    std::filesystem::path tmp = tmpname.str();
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) return;
      out << kHeader << '\n' << key << '\n' << value.serialize() << '\n';
      if (!out) {
        std::filesystem::remove(tmp, ec);
        return;
      }
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

 private:
  static constexpr const char* kHeader = "qsu2-bracket 1";
  std::filesystem::path dir_;
};

struct EvaluatorOptions {
  int width_limit = kDefaultWidthLimit;
  unsigned threads = 0;  // 0: hardware concurrency
  std::optional<std::filesystem::path> cache_dir;
};

struct EvaluatorStats {
  std::size_t memory_hits = 0;
  std::size_t disk_hits = 0;
  std::size_t computed = 0;
};

/// Multiplicative brackets with an in-memory table in front of the optional
/// disk cache. Thread safe.
class BracketEvaluator {
 public:
  explicit BracketEvaluator(EvaluatorOptions opt = {}) : opt_(std::move(opt)) {
    if (opt_.cache_dir) disk_.emplace(*opt_.cache_dir);
    if (opt_.threads == 0) opt_.threads = std::max(1u, std::thread::hardware_concurrency());
  }

  const EvaluatorOptions& options() const { return opt_; }

  LaurentPoly mult(const PDCode& d) {
    std::string key = bracket_key(d);
    {
      std::lock_guard<std::mutex> g(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        ++stats_.memory_hits;
        return it->second;
      }
    }
    std::optional<LaurentPoly> v;
    bool from_disk = false;
    if (disk_) {
      v = disk_->load(key);
      from_disk = v.has_value();
    }
    if (!v) {
      v = bracket_mult(d, opt_.width_limit);
      if (disk_) disk_->store(key, *v);
    }
    std::lock_guard<std::mutex> g(mu_);
    ++(from_disk ? stats_.disk_hits : stats_.computed);
    memo_.emplace(key, *v);
    return *v;
  }

  /// Evaluates the diagrams on the worker pool. The first failure in input
  /// order is rethrown after all workers finish.
  void prefetch(const std::vector<PDCode>& ds) {
    if (ds.empty()) return;
    const std::size_t workers = std::min<std::size_t>(opt_.threads, ds.size());
    std::vector<std::exception_ptr> errors(ds.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < ds.size();) {
        try {
          mult(ds[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  EvaluatorStats stats() const {
    std::lock_guard<std::mutex> g(mu_);
    return stats_;
  }

 private:
  EvaluatorOptions opt_;
  std::optional<DiskCache> disk_;
  mutable std::mutex mu_;
  std::map<std::string, LaurentPoly> memo_;
  EvaluatorStats stats_;
};

}  // namespace qsu2
