#pragma once

#include <filesystem>

#include "closest/search.hpp"
#include "closest/string_set.hpp"
#include "closest/worker.hpp"

namespace closest {

/// Distributed run settings. tmax is the per-unit cutoff; K the split
/// branching factor. tmax_nodes gives a deterministic node-count cutoff for
/// tests and reproducible runs (either budget may be used; seconds is the
/// conventional one).
struct RunConfig {
  std::filesystem::path queue_dir;
  double tmax_seconds = -1;
  std::int64_t tmax_nodes = -1;
  int split_k = 2;
  int workers = 1;  // in-process worker threads; 0 = external processes only
  Heuristic heuristic = Heuristic::pwm;
  TieBreak tie_break;
  bool root_sac = false;
  std::uint64_t checkpoint_nodes = 0;
  std::uint64_t poll_nodes = 10000;
  std::chrono::milliseconds stale_after{60000};
  double max_total_seconds = -1;  // global safety cap
};

/// Two-front distributed minimization. A seed run attacks the whole instance
/// for one cutoff; if unsolved, the suspended optimization becomes the high
/// front and one fixed-d decision unit per candidate distance becomes the
/// low front, scheduled in ascending d. Bound updates flow through the
/// board; the run halts as soon as the bounds meet.
SolveResult coordinate(const StringSet& strings, const RunConfig& cfg);

}  // namespace closest
