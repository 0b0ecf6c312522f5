#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "closest/model.hpp"

namespace closest {

/// One committed level of a suspended search: the position assigned at this
/// depth, its value, and the values at this depth already fully explored.
struct FrontierEntry {
  int pos = 0;
  std::uint8_t value = 0;
  SymbolSet exhausted;
};

/// Resumable search frontier: the committed path with per-depth exhausted
/// sets, plus the cumulative node count. Everything left of the path has
/// been fully explored; re-running from here never repeats it.
struct SearchState {
  std::vector<FrontierEntry> path;
  std::uint64_t nodes = 0;
};

enum class Status { solved, unsat, timeout, resource_limit };

const char* to_string(Status s);

struct TracePoint {
  double elapsed_ms = 0;
  int d = 0;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
  double wall_ms = 0;
};

struct SolveResult {
  Mode mode = Mode::optimize;
  Status status = Status::unsat;
  std::optional<int> best_d;
  std::vector<std::string> witnesses;
  SearchStats stats;
  std::vector<TracePoint> trace;
  std::optional<SearchState> frontier;  // present when suspended
};

/// Mid-search directive from the poll callback: tightened bounds and/or an
/// abort request (reported as a timeout with a valid frontier).
struct PollDecision {
  std::optional<int> new_cap;
  std::optional<int> new_low;
  bool abort = false;
};

struct SearchLimits {
  std::uint64_t max_nodes = 0;  // 0 = unlimited; counts this run only
  double max_seconds = 0;       // 0 = unlimited
  std::uint64_t poll_interval = 10000;
  std::function<PollDecision()> poll;
  std::uint64_t checkpoint_interval = 0;  // 0 = no checkpoints
  std::function<void(const SearchState&)> checkpoint;
  /// Streaming sink for enumerate witnesses; when set they are not collected
  /// in the result.
  std::function<void(std::string_view)> on_solution;
};

/// Depth-first branch-and-bound engine over a fixed variable permutation.
///
/// The engine keeps per-string mismatch counters instead of materialized
/// distance variables: mismatches() counts committed disagreements,
/// forced_mismatches() counts unassigned positions whose domain no longer
/// contains the string's symbol. Propagation fails a node as soon as some
/// string's two counters exceed the cap, and narrows future domains when a
/// string sits exactly at the cap (forward checking on the sum bounds).
class Searcher {
 public:
  explicit Searcher(const Model& model);

  /// Rebuilds the stack of a suspended search. Entries must follow the
  /// model's variable order; values outside the stated domains are rejected.
  /// Throws ValidationError on malformed frontiers.
  void load_frontier(const SearchState& state);

  /// Runs to completion or until a limit fires. May be called once per
  /// Searcher (after an optional load_frontier).
  SolveResult run(const SearchLimits& limits = {});

  // --- state probing (propagation tests, the root SAC pass, split planning)

  /// Assigns a value at an arbitrary position and propagates under the
  /// current cap. On failure the state is rolled back and false returned.
  bool try_assign(int pos, std::uint8_t value);
  /// Undoes the most recent successful try_assign.
  void undo_assign();

  int cap() const { return cap_; }
  void set_cap(int cap) { cap_ = cap; }
  SymbolSet domain(int pos) const { return domains_[pos]; }
  int mismatches(int i) const { return mism_[i]; }
  int forced_mismatches(int i) const { return forced_[i]; }
  bool propagate_now() { return propagate(); }

  const std::vector<int>& variable_order() const { return order_; }

  /// Candidate values at a depth's position under the current domains, in
  /// heuristic value order.
  std::vector<std::uint8_t> ordered_values(int pos) const;

  const Model& model() const { return model_; }

 private:
  struct Frame {
    int pos = -1;
    std::vector<std::uint8_t> candidates;
    int next = 0;
    SymbolSet pre_exhausted;  // explored in earlier runs (from a frontier)
    // snapshot at frame entry
    std::vector<SymbolSet> saved_domains;
    std::vector<int> saved_mism;
    std::vector<int> saved_forced;
  };

  struct Snapshot {
    std::vector<SymbolSet> domains;
    std::vector<int> mism;
    std::vector<int> forced;
    int assigned_pos = -1;
  };

  void assign(int pos, std::uint8_t value);
  bool propagate();
  void save_into(Frame& f) const;
  void restore_from(const Frame& f);
  void enter_frame(int depth, SymbolSet pre_exhausted);
  SearchState capture() const;
  // true when the run is done
  bool record_solution(SolveResult& result, const SearchLimits& limits);
  bool boundary_checks(SolveResult& result, const SearchLimits& limits);
  double elapsed_ms() const;

  const Model& model_;
  int n_;
  int len_;
  int sigma_;
  int cap_;
  Pwm pwm_;
  std::vector<int> order_;
  std::vector<std::vector<std::uint8_t>> value_rank_;  // full-order per position

  std::vector<SymbolSet> domains_;
  std::vector<std::uint8_t> assignment_;  // 0 = unassigned
  std::vector<int> mism_;
  std::vector<int> forced_;

  std::vector<Frame> frames_;
  int top_ = -1;

  std::vector<Snapshot> probe_stack_;
  std::vector<int> tight_;          // propagation worklist scratch
  std::vector<char> queued_;

  std::uint64_t nodes_ = 0;       // cumulative, includes prior runs and replay
  std::uint64_t run_nodes_ = 0;   // this run only
  std::vector<std::uint8_t> incumbent_;
  std::optional<int> incumbent_d_;
  int low_stop_ = 0;              // stop optimizing once an incumbent reaches this
  bool ran_ = false;
  bool resumed_ = false;
  bool reconstruction_complete_ = false;
  bool exhausted_at_load_ = false;
  std::chrono::steady_clock::time_point start_;
};

/// Branch-and-bound minimization. Requires mode == optimize.
SolveResult solve_min(const Model& model, const SearchLimits& limits = {});

/// Fixed-distance feasibility. Requires mode == decide.
SolveResult decide(const Model& model, const SearchLimits& limits = {});

/// All strings within the model's domains at distance <= fixed_d, reported
/// once each, in depth-first heuristic order. Requires mode == enumerate.
SolveResult enumerate_all(const Model& model, const SearchLimits& limits = {});

/// Singleton probe at the root: drops every value whose assignment fails
/// propagation outright. Returns the narrowed model, or nullopt when some
/// position loses its whole domain (unsat at the model's cap).
std::optional<Model> root_sac_probe(const Model& model);

}  // namespace closest
