#ifndef RBNUM_COMMANDS_HPP
#define RBNUM_COMMANDS_HPP

#include "rainbow/rainbow.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace rbnum {

enum ExitCode : int {
  kOk = 0,
  kUsageOrIo = 1,
  kValidation = 2,
  kMismatch = 3,
};

struct RunOptions {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;
  unsigned threads = 1;
  std::string lemma5 = "off";
  bool skip_extremal = false;
  std::string store = "rb_store.json";
  bool no_store = false;
  bool reset_store = false;

  rainbow::SearchLimits limits() const {
    rainbow::SearchLimits l;
    l.max_nodes = max_nodes;
    if (max_seconds) {
      l.max_wall_time = std::chrono::milliseconds(static_cast<long long>(*max_seconds * 1000.0));
    }
    l.parallel_width = threads;
    l.lemma5_prune = lemma5 == "on";
    l.enumerate_all_extremal = !skip_extremal;
    return l;
  }
};

inline void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--max-nodes", o.max_nodes, "Abort after this many search nodes")->check(CLI::PositiveNumber);
  cmd->add_option("--max-seconds", o.max_seconds, "Abort after this much wall time")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "Search workers")->check(CLI::Range(1U, 256U));
  cmd->add_option("--lemma5-prune", o.lemma5, "k=3 first-occurrence doubling prune")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_flag("--skip-extremal", o.skip_extremal, "Do not count extremal colorings");
  cmd->add_option("--store", o.store, "Result store path");
  cmd->add_flag("--no-store", o.no_store, "Neither read nor write the result store");
  cmd->add_flag("--reset-store", o.reset_store, "Discard an existing (possibly corrupt) store");
}

/// Opens the store under an exclusive lock, or nothing with --no-store.
class StoreSession {
public:
  explicit StoreSession(const RunOptions& o) {
    if (o.no_store) {
      return;
    }
    lock_.emplace(o.store);
    if (o.reset_store) {
      std::filesystem::remove(o.store);
    }
    store_.emplace(rainbow::ResultStore::load(o.store));
  }

  /// Cached result if present, else runs the search and records it.
  rainbow::RbResult resolve(int n, int k, const rainbow::SearchLimits& limits) {
    if (store_) {
      if (auto hit = store_->cached(n, k, rainbow::kEngineVersion, limits.enumerate_all_extremal)) {
        return *hit;
      }
    }
    auto r = rainbow::compute_rb(n, rainbow::Equation(k), limits);
    if (store_) {
      dirty_ |= store_->put({r, {rainbow::kEngineVersion, limits, rainbow::utc_timestamp()}});
    }
    return r;
  }

  void save() {
    if (store_ && (dirty_ || store_->stale())) {
      store_->save();
    }
  }

private:
  std::optional<rainbow::StoreLock> lock_;
  std::optional<rainbow::ResultStore> store_;
  bool dirty_ = false;
};

inline std::string classes_text(const rainbow::Coloring& c) {
  std::string s;
  for (const auto& cls : c.classes()) {
    s += s.empty() ? "{" : " {";
    for (std::size_t i = 0; i < cls.size(); ++i) {
      s += (i ? "," : "") + std::to_string(cls[i]);
    }
    s += "}";
  }
  return s;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? " " : "") + std::to_string(v[i]);
  }
  return s;
}

inline int cmd_rb(int n, int k, const RunOptions& o, std::ostream& out, std::ostream& err) {
  const rainbow::Equation eq(k);
  StoreSession session(o);
  const auto limits = o.limits();
  const auto r = session.resolve(n, k, limits);
  session.save();
  const auto row = rainbow::make_row(r);

  out << "equation: " << eq.to_string() << '\n';
  out << "n=" << n << " k=" << k << '\n';
  out << "status: " << rainbow::to_string(r.status) << (r.stats.cached ? " (cached)" : "") << '\n';
  if (r.complete()) {
    out << "rb: " << r.rb << '\n';
    out << "max rainbow-free colors: " << r.max_rainbow_free_colors << '\n';
  } else {
    out << "rb: >= " << row.oracle_lower << " (search aborted; lower bound only)\n";
  }
  out << "witness: " << r.witness.to_string() << '\n';
  out << "witness classes: " << classes_text(r.witness) << '\n';
  if (r.extremal_count) {
    out << "extremal colorings: " << *r.extremal_count << (*r.extremal_count == 1 ? " (unique)" : "") << '\n';
  }
  if (row.rb_formula) {
    out << "formula: " << *row.rb_formula << '\n';
  }
  out << "lower bound: " << row.general_lower << '\n';
  if (row.L) {
    out << "L: " << *row.L << '\n';
  }
  out << "nodes: " << r.stats.nodes_visited << " rainbow prunes: " << r.stats.prunes_by_rainbow
      << " bound prunes: " << r.stats.prunes_by_bound << " time_ms: " << rainbow::detail::format_ms(r.stats.wall_time)
      << '\n';

  if (row.mismatch()) {
    err << "MISMATCH: oracle disagrees with the closed form or lower bound for n=" << n << " k=" << k << '\n';
    return kMismatch;
  }
  if (row.rb_formula && r.complete()) {
    out << "check: matches formula\n";
  } else if (r.complete()) {
    out << "check: oracle " << r.rb << " >= lower bound " << row.general_lower << '\n';
  }
  return kOk;
}

inline int cmd_construct(int n, std::optional<int> k_opt, const std::string& which,
                         const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err) {
  std::optional<rainbow::Coloring> c;
  int k = 0;
  if (which == "trailing-zeros") {
    k = k_opt.value_or(3);
    if (k != 3) {
      err << "error: the trailing-zeros coloring is the x1 + x2 = x3 construction; use --k 3\n";
      return kUsageOrIo;
    }
    c = rainbow::trailing_zeros_coloring(n);
  } else {
    if (!k_opt) {
      err << "error: --which staircase needs --k (k >= 4)\n";
      return kUsageOrIo;
    }
    k = *k_opt;
    try {
      c = rainbow::staircase_coloring(n, k);
    } catch (const rainbow::no_solutions_error& e) {
      err << "error: " << e.what() << "; nothing to construct (every element can get its own color)\n";
      return kUsageOrIo;
    } catch (const rainbow::unsupported_error& e) {
      err << "error: " << e.what() << '\n';
      return kUsageOrIo;
    }
  }

  std::ostream* summary = &out;
  if (out_path) {
    std::ofstream f(*out_path, std::ios::trunc);
    if (!f) {
      err << "error: cannot write " << *out_path << '\n';
      return kUsageOrIo;
    }
    rainbow::write_coloring(f, *c);
  } else {
    rainbow::write_coloring(out, *c);
    summary = &err;
  }
  const auto witness = rainbow::find_rainbow_solution(*c, rainbow::Equation(k));
  *summary << "colors: " << c->colors() << '\n';
  *summary << "verdict: " << (witness ? "rainbow solution " + witness->to_string() : std::string("rainbow-free"))
           << '\n';
  return kOk;
}

inline int cmd_verify(const std::string& path, int k, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open " << path << '\n';
    return kUsageOrIo;
  }
  std::optional<rainbow::Coloring> c;
  try {
    c = rainbow::read_coloring(in);
  } catch (const rainbow::parse_error& e) {
    err << "invalid coloring: " << e.what() << '\n';
    return kValidation;
  } catch (const rainbow::constraint_error& e) {
    err << "invalid coloring: " << e.what() << '\n';
    return kValidation;
  }
  const rainbow::Equation eq(k);
  const auto canon = rainbow::canonicalize(*c);
  const auto witness = rainbow::find_rainbow_solution(*c, eq);
  out << "n: " << c->n() << '\n';
  out << "r: " << c->colors() << '\n';
  out << "canonical: " << canon.to_string() << '\n';
  out << "s: " << join(rainbow::first_occurrences(canon)) << '\n';
  out << "verdict: " << (witness ? "rainbow solution " + witness->to_string() : std::string("rainbow-free")) << '\n';
  if (k == 3) {
    out << "s-bounds: " << (rainbow::check_s_bounds(canon) ? "hold" : "violated") << '\n';
  }
  return kOk;
}

inline int cmd_sweep(int n_min, int n_max, int k, const std::string& format, const std::optional<std::string>& out_path,
                     const RunOptions& o, std::ostream& out, std::ostream& err) {
  if (n_min > n_max) {
    err << "error: --n-min must not exceed --n-max\n";
    return kUsageOrIo;
  }
  const rainbow::Equation eq(k);
  StoreSession session(o);
  const auto limits = o.limits();
  std::vector<rainbow::SweepRow> rows;
  int mismatches = 0;
  for (int n = n_min; n <= n_max; ++n) {
    rows.push_back(rainbow::make_row(session.resolve(n, k, limits)));
    if (rows.back().mismatch()) {
      err << "MISMATCH at n=" << n << " k=" << k << '\n';
      ++mismatches;
    }
  }
  session.save();

  std::ofstream file;
  std::ostream* dest = &out;
  if (out_path) {
    file.open(*out_path, std::ios::trunc);
    if (!file) {
      err << "error: cannot write " << *out_path << '\n';
      return kUsageOrIo;
    }
    dest = &file;
  }
  if (format == "json") {
    rainbow::write_json(*dest, rows);
  } else {
    rainbow::write_csv(*dest, rows);
  }
  return mismatches ? kMismatch : kOk;
}

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact rainbow numbers rb([n], x1 + ... + x_{k-1} = x_k)", "rbnum"};
  app.require_subcommand(1);

  int n = 0;
  int k = 3;
  std::optional<int> k_opt;
  int n_min = 0;
  int n_max = 0;
  std::string which;
  std::string format = "csv";
  std::string file;
  std::optional<std::string> out_path;
  RunOptions run_opts;

  auto* rb = app.add_subcommand("rb", "Compute rb([n], eq) by exhaustive search");
  rb->add_option("--n", n, "Domain size")->required()->check(CLI::Range(1, rainbow::kMaxSearchN));
  rb->add_option("--k", k, "Number of variables")->required()->check(CLI::Range(3, 64));
  add_run_options(rb, run_opts);

  auto* construct = app.add_subcommand("construct", "Write a rainbow-free construction");
  construct->add_option("--n", n, "Domain size")->required()->check(CLI::PositiveNumber);
  construct->add_option("--k", k_opt, "Number of variables")->check(CLI::Range(3, 1 << 20));
  construct->add_option("--which", which, "Construction")->required()->check(
      CLI::IsMember({"trailing-zeros", "staircase"}));
  construct->add_option("--out", out_path, "Output coloring file (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Check a coloring file for rainbow solutions");
  verify->add_option("file", file, "Coloring file")->required();
  verify->add_option("--k", k, "Number of variables")->required()->check(CLI::Range(3, 1 << 20));

  auto* sw = app.add_subcommand("sweep", "Tabulate rb over a range of n");
  sw->add_option("--n-min", n_min, "First n")->required()->check(CLI::Range(1, rainbow::kMaxSearchN));
  sw->add_option("--n-max", n_max, "Last n")->required()->check(CLI::Range(1, rainbow::kMaxSearchN));
  sw->add_option("--k", k, "Number of variables")->required()->check(CLI::Range(3, 64));
  sw->add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  sw->add_option("--out", out_path, "Output file (default: stdout)");
  add_run_options(sw, run_opts);

  std::vector<std::string> storage{"rbnum"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) {
    argv.push_back(s.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageOrIo;
  }

  try {
    if (rb->parsed()) {
      return cmd_rb(n, k, run_opts, out, err);
    }
    if (construct->parsed()) {
      return cmd_construct(n, k_opt, which, out_path, out, err);
    }
    if (verify->parsed()) {
      return cmd_verify(file, k, out, err);
    }
    return cmd_sweep(n_min, n_max, k, format, out_path, run_opts, out, err);
  } catch (const rainbow::store_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  }
}

} // namespace rbnum

#endif // RBNUM_COMMANDS_HPP
