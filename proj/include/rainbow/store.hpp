#ifndef RAINBOW_STORE_HPP
#define RAINBOW_STORE_HPP

#include "rainbow/coloring.hpp"
#include "rainbow/error.hpp"
#include "rainbow/search.hpp"
#include "rainbow/version.hpp"

#include <json.hpp>

#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace rainbow {

/// Bump when the on-disk layout or the meaning of stored values changes;
/// stores with another version are treated as empty.
inline constexpr int kStoreSchemaVersion = 1;

class store_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The file exists but cannot be read as a store. Never overwritten unless
/// the caller explicitly resets it.
class store_corrupt_error : public store_error {
public:
  using store_error::store_error;
};

struct Provenance {
  std::string engine_version;
  SearchLimits limits;
  std::string timestamp;
};

struct StoreEntry {
  RbResult result;
  Provenance provenance;
};

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {

using json = nlohmann::ordered_json;

inline json limits_to_json(const SearchLimits& l) {
  json j;
  j["max_nodes"] = l.max_nodes ? json(*l.max_nodes) : json(nullptr);
  j["max_wall_time_ms"] = l.max_wall_time ? json(l.max_wall_time->count()) : json(nullptr);
  j["enumerate_all_extremal"] = l.enumerate_all_extremal;
  j["parallel_width"] = l.parallel_width;
  j["lemma5_prune"] = l.lemma5_prune;
  return j;
}

inline SearchLimits limits_from_json(const json& j) {
  SearchLimits l;
  if (!j.at("max_nodes").is_null()) {
    l.max_nodes = j.at("max_nodes").get<std::uint64_t>();
  }
  if (!j.at("max_wall_time_ms").is_null()) {
    l.max_wall_time = std::chrono::milliseconds(j.at("max_wall_time_ms").get<long long>());
  }
  l.enumerate_all_extremal = j.at("enumerate_all_extremal").get<bool>();
  l.parallel_width = j.at("parallel_width").get<unsigned>();
  l.lemma5_prune = j.at("lemma5_prune").get<bool>();
  return l;
}

inline json entry_to_json(const StoreEntry& e) {
  const RbResult& r = e.result;
  json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["rb"] = r.rb;
  j["max_rainbow_free_colors"] = r.max_rainbow_free_colors;
  j["extremal_count"] = r.extremal_count ? json(*r.extremal_count) : json(nullptr);
  j["witness"] = r.witness.one_based();
  j["status"] = std::string(to_string(r.status));
  j["stats"] = {{"nodes_visited", r.stats.nodes_visited},
                {"prunes_by_rainbow", r.stats.prunes_by_rainbow},
                {"prunes_by_bound", r.stats.prunes_by_bound},
                {"prunes_by_structure", r.stats.prunes_by_structure},
                {"wall_time_us", r.stats.wall_time.count()}};
  j["provenance"] = {{"engine_version", e.provenance.engine_version},
                     {"limits", limits_to_json(e.provenance.limits)},
                     {"timestamp", e.provenance.timestamp}};
  return j;
}

inline StoreEntry entry_from_json(const json& j) {
  StoreEntry e;
  RbResult& r = e.result;
  r.n = j.at("n").get<int>();
  r.k = j.at("k").get<int>();
  r.rb = j.at("rb").get<int>();
  r.max_rainbow_free_colors = j.at("max_rainbow_free_colors").get<int>();
  if (!j.at("extremal_count").is_null()) {
    r.extremal_count = j.at("extremal_count").get<std::uint64_t>();
  }
  r.witness = Coloring::from_one_based(j.at("witness").get<std::vector<Color>>());
  if (r.witness.n() != r.n) {
    throw parse_error("witness length differs from n");
  }
  const auto status = parse_status(j.at("status").get<std::string>());
  if (!status) {
    throw parse_error("unknown status '" + j.at("status").get<std::string>() + "'");
  }
  r.status = *status;
  const json& s = j.at("stats");
  r.stats.nodes_visited = s.at("nodes_visited").get<std::uint64_t>();
  r.stats.prunes_by_rainbow = s.at("prunes_by_rainbow").get<std::uint64_t>();
  r.stats.prunes_by_bound = s.at("prunes_by_bound").get<std::uint64_t>();
  r.stats.prunes_by_structure = s.at("prunes_by_structure").get<std::uint64_t>();
  r.stats.wall_time = std::chrono::microseconds(s.at("wall_time_us").get<long long>());
  const json& p = j.at("provenance");
  e.provenance.engine_version = p.at("engine_version").get<std::string>();
  e.provenance.limits = limits_from_json(p.at("limits"));
  e.provenance.timestamp = p.at("timestamp").get<std::string>();
  return e;
}

} // namespace detail

/// Results keyed by (n, k), persisted as versioned JSON.
///
/// Precedence: a completed entry is never replaced by an aborted one, and is
/// only replaced by another completed entry from a different engine version.
class ResultStore {
public:
  using Key = std::pair<int, int>;

  explicit ResultStore(std::filesystem::path path) : path_(std::move(path)) {}

  /// Missing file gives an empty store. A store written with a different
  /// schema version is loaded empty and flagged stale.
  static ResultStore load(const std::filesystem::path& path) {
    ResultStore store(path);
    if (!std::filesystem::exists(path)) {
      return store;
    }
    std::ifstream in(path);
    if (!in) {
      throw store_error("cannot read store " + path.string());
    }
    try {
      const auto j = detail::json::parse(in);
      if (j.at("schema_version").get<int>() != kStoreSchemaVersion) {
        store.stale_ = true;
        return store;
      }
      for (const auto& item : j.at("entries")) {
        StoreEntry e = detail::entry_from_json(item);
        store.entries_[{e.result.n, e.result.k}] = std::move(e);
      }
    } catch (const std::exception& ex) {
      throw store_corrupt_error("store " + path.string() + " is corrupt (" + ex.what() +
                                "); refusing to overwrite it");
    }
    return store;
  }

  std::string serialize() const {
    detail::json j;
    j["schema_version"] = kStoreSchemaVersion;
    j["entries"] = detail::json::array();
    for (const auto& [key, e] : entries_) {
      j["entries"].push_back(detail::entry_to_json(e));
    }
    return j.dump(2) + "\n";
  }

  /// Writes via a temporary file and rename.
  void save() const {
    const auto tmp = path_.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) {
        throw store_error("cannot write " + tmp);
      }
      out << serialize();
      if (!out) {
        throw store_error("write failed for " + tmp);
      }
    }
    std::filesystem::rename(tmp, path_);
  }

  const StoreEntry* find(int n, int k) const {
    const auto it = entries_.find({n, k});
    return it == entries_.end() ? nullptr : &it->second;
  }

  /// A completed result from this engine version, flagged as cached.
  /// `need_extremal` also requires the extremal count to be present.
  std::optional<RbResult> cached(int n, int k, const std::string& engine_version, bool need_extremal) const {
    const StoreEntry* e = find(n, k);
    if (!e || !e->result.complete() || e->provenance.engine_version != engine_version) {
      return std::nullopt;
    }
    if (need_extremal && !e->result.extremal_count) {
      return std::nullopt;
    }
    RbResult r = e->result;
    r.stats.cached = true;
    return r;
  }

  /// Inserts under the precedence rule; returns whether the store changed.
  bool put(StoreEntry entry) {
    const Key key{entry.result.n, entry.result.k};
    const auto it = entries_.find(key);
    if (it != entries_.end()) {
      const StoreEntry& old = it->second;
      if (old.result.complete()) {
        if (!entry.result.complete()) {
          return false;
        }
        const bool adds_count = !old.result.extremal_count && entry.result.extremal_count;
        if (old.provenance.engine_version == entry.provenance.engine_version && !adds_count) {
          return false;
        }
      }
    }
    entries_[key] = std::move(entry);
    return true;
  }

  const std::map<Key, StoreEntry>& entries() const noexcept { return entries_; }
  const std::filesystem::path& path() const noexcept { return path_; }
  bool stale() const noexcept { return stale_; }

private:
  std::filesystem::path path_;
  std::map<Key, StoreEntry> entries_;
  bool stale_ = false;
};

/// Exclusive advisory lock on `<store>.lock`; fails fast if another process
/// holds it.
class StoreLock {
public:
  explicit StoreLock(const std::filesystem::path& store_path) : lock_path_(store_path.string() + ".lock") {
    fd_ = ::open(lock_path_.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) {
      throw store_error("cannot open lock file " + lock_path_);
    }
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      fd_ = -1;
      throw store_error("store " + store_path.string() + " is locked by another process");
    }
  }

  StoreLock(const StoreLock&) = delete;
  StoreLock& operator=(const StoreLock&) = delete;

  ~StoreLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }

private:
  std::string lock_path_;
  int fd_ = -1;
};

} // namespace rainbow

#endif // RAINBOW_STORE_HPP
