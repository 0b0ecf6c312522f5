#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "closest/bound_board.hpp"
#include "closest/subproblem.hpp"
#include "closest/work_queue.hpp"

namespace closest {

/// Per-unit budgets and split settings. Budgets: negative = unlimited,
/// zero = suspend immediately, positive = the budget itself.
struct WorkerConfig {
  double tmax_seconds = -1;
  std::int64_t tmax_nodes = -1;
  int split_k = 2;
  std::uint64_t checkpoint_nodes = 0;  // 0 = no checkpoints
  std::uint64_t poll_nodes = 10000;
  std::chrono::milliseconds idle_wait{10};
};

/// What one unit of work produced.
struct WorkerOutcome {
  enum class Kind {
    solved,    // result carries witnesses / best_d
    unsat,     // region exhausted with nothing to report
    timeout,   // suspended; advanced carries the new frontier
    dropped,   // made moot by the shared bounds, no result
  };
  Kind kind = Kind::unsat;
  SolveResult result;
  std::optional<Subproblem> advanced;  // kind == timeout
};

/// Runs one unit against its budgets, resuming from its frontier and polling
/// the board (when given) at node-expansion boundaries to tighten bounds or
/// stop. A checkpoint sink, when set, receives the advanced unit and any
/// witnesses found since the previous checkpoint.
using CheckpointSink =
    std::function<void(const Subproblem& advanced, std::span<const std::string> new_witnesses)>;

WorkerOutcome run_worker(const Subproblem& sub, const WorkerConfig& cfg,
                         const BoundBoard* board = nullptr,
                         const std::function<bool()>& halted = {},
                         const CheckpointSink& checkpoint = {},
                         const InstanceLoader& loader = {});

/// Claims and processes one queued unit end to end: run, then split and
/// re-enqueue on suspension, write the result file, post bounds. Returns
/// false when the queue had nothing to claim.
bool work_one(WorkQueue& queue, const BoundBoard* board, const WorkerConfig& cfg);

/// Claim loop. Stops on halt, or when the queue stays empty and
/// exit_when_empty is set.
void work_until_done(WorkQueue& queue, const BoundBoard* board, const WorkerConfig& cfg,
                     bool exit_when_empty = true);

}  // namespace closest
