#ifndef RAINBOW_REPORT_HPP
#define RAINBOW_REPORT_HPP

#include "rainbow/constructions.hpp"
#include "rainbow/search.hpp"

#include <json.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rainbow {

inline constexpr const char* kSweepCsvHeader = "n,k,rb_oracle,rb_formula,general_lower,L,extremal_count,status,nodes,time_ms";

/// One line of a sweep table: the oracle result next to the closed forms.
struct SweepRow {
  int n = 0;
  int k = 0;
  std::optional<int> rb_oracle;   // empty unless the search completed
  std::optional<int> rb_formula;
  int general_lower = 0;
  std::optional<int> L;           // k >= 4 only
  std::optional<std::uint64_t> extremal_count;
  SearchStatus status = SearchStatus::complete;
  std::uint64_t nodes = 0;
  std::chrono::microseconds time{0};

  /// Certified lower bound on rb from the search, exact when complete.
  int oracle_lower = 0;

  /// The oracle contradicts a closed form or constructive lower bound.
  bool mismatch() const noexcept {
    if (rb_oracle) {
      return (rb_formula && *rb_oracle != *rb_formula) || *rb_oracle < general_lower;
    }
    // an aborted run still certifies oracle_lower <= rb
    return rb_formula && oracle_lower > *rb_formula;
  }
};

inline SweepRow make_row(const RbResult& r) {
  SweepRow row;
  row.n = r.n;
  row.k = r.k;
  if (r.complete()) {
    row.rb_oracle = r.rb;
  }
  row.oracle_lower = r.max_rainbow_free_colors + 1;
  row.rb_formula = rb_formula(r.n, r.k);
  row.general_lower = construction_lower_bound(r.n, r.k);
  if (r.k >= 4) {
    row.L = staircase_threshold(r.n, r.k);
  }
  row.extremal_count = r.extremal_count;
  row.status = r.status;
  row.nodes = r.stats.nodes_visited;
  row.time = r.stats.wall_time;
  return row;
}

namespace detail {

inline std::string format_ms(std::chrono::microseconds t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%03lld", static_cast<long long>(t.count() / 1000),
                static_cast<long long>(t.count() % 1000));
  return buf;
}

template <typename T>
std::string opt_cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

template <typename T>
nlohmann::ordered_json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

} // namespace detail

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << r.k << ',' << detail::opt_cell(r.rb_oracle) << ',' << detail::opt_cell(r.rb_formula) << ','
       << r.general_lower << ',' << detail::opt_cell(r.L) << ',' << detail::opt_cell(r.extremal_count) << ','
       << to_string(r.status) << ',' << r.nodes << ',' << detail::format_ms(r.time) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const SweepRow& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["rb_oracle"] = detail::opt_json(r.rb_oracle);
  j["rb_formula"] = detail::opt_json(r.rb_formula);
  j["general_lower"] = r.general_lower;
  j["L"] = detail::opt_json(r.L);
  j["extremal_count"] = detail::opt_json(r.extremal_count);
  j["status"] = std::string(to_string(r.status));
  j["nodes"] = r.nodes;
  // fixed three decimals, same text as the CSV cell
  j["time_ms"] = nlohmann::ordered_json::parse(detail::format_ms(r.time));
  return j;
}

inline void write_json(std::ostream& os, const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back(to_json(r));
  }
  os << arr.dump(2) << '\n';
}

} // namespace rainbow

#endif // RAINBOW_REPORT_HPP
