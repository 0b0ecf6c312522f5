#include "closest/coordinator.hpp"

#include <algorithm>
#include <thread>

#include "closest/metrics.hpp"

namespace closest {

namespace {

// Best input row as a fallback incumbent: every row is within the diameter
// of the whole set, so the tightest row always yields a valid witness.
std::pair<int, std::string> best_input_row(const StringSet& strings) {
  int best_d = -1;
  int best_row = 0;
  for (int k = 0; k < strings.count(); ++k) {
    int worst = 0;
    for (int i = 0; i < strings.count(); ++i)
      worst = std::max(worst, hamming_distance(strings.row(k), strings.row(i)));
    if (best_d < 0 || worst < best_d) {
      best_d = worst;
      best_row = k;
    }
  }
  return {best_d, strings.decode_row(best_row)};
}

bool front_live(const WorkQueue& queue, const std::string& front) {
  for (const auto& name : queue.pending_names())
    if (WorkQueue::front_of(WorkQueue::id_of(name)) == front) return true;
  for (const auto& name : queue.running_names())
    if (WorkQueue::front_of(WorkQueue::id_of(name)) == front) return true;
  return false;
}

}  // namespace

SolveResult coordinate(const StringSet& strings, const RunConfig& cfg) {
  if (cfg.split_k < 2) throw std::invalid_argument("coordinate needs K >= 2");
  if (cfg.tmax_seconds < 0 && cfg.tmax_nodes < 0)
    throw std::invalid_argument("coordinate needs a per-unit cutoff");
  if (cfg.queue_dir.empty()) throw std::invalid_argument("coordinate needs a queue directory");

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&t0]() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  WorkQueue queue(cfg.queue_dir);
  BoundBoard board(queue.bounds_file());

  const int lemma_low = distance_lower_bound(strings);
  board.post_low(lemma_low);

  // Seed phase: one cutoff of plain optimization over the whole instance.
  const Model seed_model = build_model(strings, Mode::optimize, cfg.heuristic,
                                       DomainMode::restricted, -1, cfg.tie_break,
                                       cfg.root_sac);
  SearchLimits seed_limits;
  if (cfg.tmax_nodes > 0) seed_limits.max_nodes = static_cast<std::uint64_t>(cfg.tmax_nodes);
  if (cfg.tmax_seconds > 0) seed_limits.max_seconds = cfg.tmax_seconds;
  Searcher seed(seed_model);
  SolveResult seed_result =
      (cfg.tmax_seconds == 0 || cfg.tmax_nodes == 0)
          ? SolveResult{.mode = Mode::optimize, .status = Status::timeout,
                        .best_d = {}, .witnesses = {}, .stats = {}, .trace = {},
                        .frontier = SearchState{}}
          : seed.run(seed_limits);

  if (seed_result.status == Status::solved || seed_result.status == Status::unsat) {
    if (seed_result.best_d)
      board.post_high(*seed_result.best_d, seed_result.witnesses.front());
    return seed_result;
  }

  // Suspended: establish the shared bounds and spawn the two fronts.
  int d_high;
  std::string witness;
  if (seed_result.best_d) {
    d_high = *seed_result.best_d;
    witness = seed_result.witnesses.front();
  } else {
    std::tie(d_high, witness) = best_input_row(strings);
  }
  board.post_high(d_high, witness);

  std::uint64_t seed_nodes = seed_result.stats.nodes;

  if (d_high > lemma_low) {
    // High front: the suspended optimization, searching strictly below d_high.
    Subproblem high = make_root_subproblem("high", strings, Mode::optimize,
                                           DomainMode::restricted, -1, cfg.heuristic,
                                           cfg.tie_break, cfg.root_sac);
    high.bounds = {lemma_low, std::min(seed.cap() + 1, d_high)};
    high = advance_subproblem(high, *seed_result.frontier, high.bounds);
    queue.enqueue(high);

    // Low front: one fixed-distance refutation per candidate, ascending.
    for (int d = lemma_low; d < d_high; ++d) {
      Subproblem unit =
          make_root_subproblem("low" + std::to_string(d), strings, Mode::decide,
                               DomainMode::restricted, d, cfg.heuristic, cfg.tie_break,
                               cfg.root_sac);
      unit.bounds = {lemma_low, d_high};
      queue.enqueue(unit);
    }
  }

  WorkerConfig worker_cfg;
  worker_cfg.tmax_seconds = cfg.tmax_seconds;
  worker_cfg.tmax_nodes = cfg.tmax_nodes;
  worker_cfg.split_k = cfg.split_k;
  worker_cfg.checkpoint_nodes = cfg.checkpoint_nodes;
  worker_cfg.poll_nodes = cfg.poll_nodes;

  std::vector<std::thread> pool;
  pool.reserve(cfg.workers);
  for (int w = 0; w < cfg.workers; ++w)
    pool.emplace_back([&queue, &board, worker_cfg]() {
      work_until_done(queue, &board, worker_cfg, /*exit_when_empty=*/false);
    });

  int done_low = lemma_low;  // every d below this is ruled out
  bool high_closed = false;
  Status final_status = Status::solved;

  for (;;) {
    queue.requeue_stale(cfg.stale_after);
    const auto snap = board.read();
    const int bl = snap.low.value_or(lemma_low);
    const int bh = snap.high.value_or(d_high);

    if (bl >= bh) break;  // bounds met: answer is bh

    // Advance the low waterline over exhausted, unsolved fronts.
    int new_low = std::max(bl, done_low);
    while (new_low < bh && !front_live(queue, "low" + std::to_string(new_low)))
      ++new_low;
    if (new_low > bl && new_low > done_low) {
      done_low = new_low;
      board.post_low(new_low);
      continue;
    }

    // A drained high front proves nothing below the incumbent exists.
    if (!high_closed && !front_live(queue, "high")) {
      high_closed = true;
      board.post_low(bh);
      continue;
    }

    if (cfg.max_total_seconds > 0 && elapsed_ms() > cfg.max_total_seconds * 1000.0) {
      final_status = Status::resource_limit;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }

  queue.post_halt();
  for (auto& t : pool) t.join();

  const auto snap = board.read();
  SolveResult result;
  result.mode = Mode::optimize;
  result.status = final_status;
  result.best_d = snap.high;
  if (snap.high) result.witnesses = {snap.witness};

  std::uint64_t total_nodes = seed_nodes;
  std::uint64_t solutions = 0;
  for (const auto& id : queue.result_ids())
    if (const auto doc = queue.read_result(id)) {
      total_nodes += doc->node_count;
      solutions += doc->witnesses.size();
    }
  result.stats.nodes = total_nodes;
  result.stats.solutions = solutions;
  result.stats.wall_ms = elapsed_ms();

  // Incumbent trace: the board's HIGH history, relative to run start.
  const auto history = board.high_history();
  if (!history.empty()) {
    const std::int64_t first_ts = history.front().first;
    int last_d = -1;
    for (const auto& [ts, d] : history) {
      if (last_d >= 0 && d >= last_d) continue;  // keep it strictly decreasing
      result.trace.push_back({static_cast<double>(ts - first_ts), d});
      last_d = d;
    }
  }
  return result;
}

}  // namespace closest
