#pragma once

#include <optional>
#include <vector>

#include "closest/metrics.hpp"
#include "closest/pwm.hpp"
#include "closest/string_set.hpp"

namespace closest {

enum class Mode { optimize, decide, enumerate };

enum class Heuristic { pwm, sdf };

enum class DomainMode { restricted, unrestricted };

const char* to_string(Mode m);
const char* to_string(Heuristic h);

/// One search instance: the input strings, per-position domains, the distance
/// interval, and the search configuration. Built once, then shared read-only.
struct Model {
  StringSet strings;
  std::vector<SymbolSet> domains;
  BoundInterval bounds;
  Mode mode = Mode::optimize;
  int fixed_d = -1;  // decide/enumerate only
  Heuristic heuristic = Heuristic::pwm;
  TieBreak tie_break;
  bool root_sac = false;

  int length() const { return strings.length(); }
  int count() const { return strings.count(); }

  /// The distance cap the search runs against: fixed_d for decide/enumerate,
  /// the upper bound for optimization.
  int initial_cap() const { return mode == Mode::optimize ? bounds.high : fixed_d; }
};

/// Bounds start at [ceil(HD/2), HD]; domains come from the column contents
/// (restricted) or the full alphabet. Throws std::invalid_argument when a
/// fixed d lies outside [0, L].
Model build_model(StringSet strings, Mode mode, Heuristic heuristic,
                  DomainMode domain_mode, int fixed_d = -1, TieBreak tie_break = {},
                  bool root_sac = false);

}  // namespace closest
