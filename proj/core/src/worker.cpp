#include "closest/worker.hpp"

#include <algorithm>
#include <thread>

#include "closest/split.hpp"

namespace closest {

namespace {

// Board-derived view of whether a unit is still worth running.
struct BoardView {
  std::optional<int> low;
  std::optional<int> high;

  static BoardView from(const BoundBoard* board) {
    if (!board) return {};
    const auto snap = board->read();
    return {snap.low, snap.high};
  }

  bool moot_decide(int d) const {
    // A witness at or below d already exists, or everything <= d is ruled out.
    return (high && *high <= d) || (low && *low > d);
  }
};

}  // namespace

WorkerOutcome run_worker(const Subproblem& sub, const WorkerConfig& cfg,
                         const BoundBoard* board, const std::function<bool()>& halted,
                         const CheckpointSink& checkpoint, const InstanceLoader& loader) {
  WorkerOutcome out;

  const BoardView view = BoardView::from(board);
  if (sub.mode == Mode::decide && view.moot_decide(sub.fixed_d)) {
    out.kind = WorkerOutcome::Kind::dropped;
    return out;
  }

  // Zero budget: suspend before touching the search, frontier unchanged.
  if (cfg.tmax_seconds == 0 || cfg.tmax_nodes == 0) {
    out.kind = WorkerOutcome::Kind::timeout;
    out.advanced = sub;
    return out;
  }

  ResolvedSubproblem resolved = resolve_subproblem(sub, loader);
  int cap = resolved.cap;
  int low = resolved.model.bounds.low;
  if (sub.mode == Mode::optimize) {
    if (view.high) cap = std::min(cap, *view.high - 1);
    if (view.low) low = std::max(low, *view.low);
    if (cap < low) {
      // Nothing useful can exist in [low, cap]; report the region closed.
      out.kind = WorkerOutcome::Kind::unsat;
      out.result.mode = sub.mode;
      out.result.status = Status::unsat;
      out.result.stats.nodes = sub.nodes;
      return out;
    }
  }
  if (sub.mode != Mode::optimize && sub.fixed_d < low) {
    out.kind = WorkerOutcome::Kind::unsat;
    out.result.mode = sub.mode;
    out.result.status = Status::unsat;
    out.result.stats.nodes = sub.nodes;
    return out;
  }
  resolved.model.bounds.low = low;

  Searcher searcher(resolved.model);
  searcher.set_cap(cap);
  searcher.load_frontier(resolved.state);

  std::vector<std::string> found;        // enumerate witnesses, this run
  std::size_t flushed = 0;               // how many of them a checkpoint saved

  SearchLimits limits;
  if (cfg.tmax_nodes > 0) limits.max_nodes = static_cast<std::uint64_t>(cfg.tmax_nodes);
  if (cfg.tmax_seconds > 0) limits.max_seconds = cfg.tmax_seconds;
  limits.poll_interval = cfg.poll_nodes;
  if (board || halted) {
    limits.poll = [&]() {
      PollDecision pd;
      if (halted && halted()) pd.abort = true;
      const BoardView now = BoardView::from(board);
      if (sub.mode == Mode::optimize) {
        if (now.high) pd.new_cap = *now.high - 1;
        if (now.low) pd.new_low = *now.low;
      } else if (sub.mode == Mode::decide && now.moot_decide(sub.fixed_d)) {
        pd.abort = true;
      }
      return pd;
    };
  }
  if (sub.mode == Mode::enumerate)
    limits.on_solution = [&](std::string_view w) { found.emplace_back(w); };
  if (cfg.checkpoint_nodes > 0 && checkpoint) {
    limits.checkpoint_interval = cfg.checkpoint_nodes;
    limits.checkpoint = [&](const SearchState& state) {
      const BoundInterval bounds{searcher.model().bounds.low,
                                 sub.mode == Mode::optimize ? searcher.cap() + 1
                                                            : sub.bounds.high};
      const Subproblem advanced = advance_subproblem(sub, state, bounds);
      checkpoint(advanced,
                 std::span<const std::string>(found.data() + flushed, found.size() - flushed));
      flushed = found.size();
    };
  }

  SolveResult result = searcher.run(limits);
  if (sub.mode == Mode::enumerate) result.witnesses = std::move(found);

  out.result = std::move(result);
  switch (out.result.status) {
    case Status::solved:
      out.kind = WorkerOutcome::Kind::solved;
      break;
    case Status::unsat:
      out.kind = WorkerOutcome::Kind::unsat;
      break;
    case Status::timeout:
    case Status::resource_limit: {
      // A poll-triggered stop on a moot decide unit is a drop, not a suspend.
      const BoardView now = BoardView::from(board);
      if ((halted && halted()) ||
          (sub.mode == Mode::decide && now.moot_decide(sub.fixed_d))) {
        out.kind = WorkerOutcome::Kind::dropped;
        return out;
      }
      out.kind = WorkerOutcome::Kind::timeout;
      const BoundInterval bounds{searcher.model().bounds.low,
                                 sub.mode == Mode::optimize ? searcher.cap() + 1
                                                            : sub.bounds.high};
      out.advanced = advance_subproblem(sub, *out.result.frontier, bounds);
      break;
    }
  }
  return out;
}

bool work_one(WorkQueue& queue, const BoundBoard* board, const WorkerConfig& cfg) {
  auto claim = queue.claim_next();
  if (!claim) return false;
  const Subproblem& sub = claim->sub;

  if (queue.has_result(sub.id)) {
    // A crashed predecessor already published this unit's result.
    queue.finish(claim->name);
    return true;
  }

  const auto halted = [&queue]() { return queue.halted(); };
  const CheckpointSink sink = [&](const Subproblem& advanced,
                                  std::span<const std::string> new_witnesses) {
    queue.append_partial_witnesses(sub.id, new_witnesses);
    queue.checkpoint(claim->name, advanced);
  };

  WorkerOutcome outcome;
  try {
    outcome = run_worker(sub, cfg, board, halted, sink);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "worker: rejecting %s: %s\n", sub.id.c_str(), e.what());
    queue.reject(claim->name);
    return true;
  }

  switch (outcome.kind) {
    case WorkerOutcome::Kind::dropped:
      queue.finish(claim->name);
      return true;
    case WorkerOutcome::Kind::solved:
    case WorkerOutcome::Kind::unsat: {
      const auto& r = outcome.result;
      queue.write_result(make_result(sub, r.status, r.best_d, r.stats.nodes, r.witnesses));
      if (board && r.status == Status::solved && r.best_d &&
          (sub.mode == Mode::optimize || sub.mode == Mode::decide))
        board->post_high(*r.best_d, r.witnesses.front());
      queue.finish(claim->name);
      return true;
    }
    case WorkerOutcome::Kind::timeout: {
      auto children = split(*outcome.advanced, cfg.split_k);
      const auto& r = outcome.result;
      if (children.empty()) {
        // The suspension point had nothing left open: the region is done.
        const Status status = sub.mode == Mode::enumerate || !r.witnesses.empty()
                                  ? Status::solved
                                  : Status::unsat;
        queue.write_result(make_result(sub, status, r.best_d, r.stats.nodes, r.witnesses));
      } else {
        for (const auto& child : children) queue.enqueue(child);
        queue.write_result(make_result(sub, r.status, r.best_d, r.stats.nodes, r.witnesses));
      }
      if (board && r.best_d && sub.mode == Mode::optimize)
        board->post_high(*r.best_d, r.witnesses.front());
      queue.finish(claim->name);  // children are durable before the parent leaves
      return true;
    }
  }
  return true;
}

void work_until_done(WorkQueue& queue, const BoundBoard* board, const WorkerConfig& cfg,
                     bool exit_when_empty) {
  while (!queue.halted()) {
    bool claimed = false;
    try {
      claimed = work_one(queue, board, cfg);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "worker: %s\n", e.what());
    }
    if (claimed) continue;
    if (exit_when_empty && queue.running_names().empty()) return;
    std::this_thread::sleep_for(cfg.idle_wait);
  }
}

}  // namespace closest
