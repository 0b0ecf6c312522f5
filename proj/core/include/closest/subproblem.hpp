#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "closest/model.hpp"
#include "closest/search.hpp"

namespace closest {

/// One serializable unit of work: instance (inline or by reference),
/// per-position domains, bound interval, and the suspended frontier.
///
/// The line format: "key: value" headers, then sections INSTANCE (one string
/// per line, inline instances only), DOMAINS (one line of allowed symbols per
/// position) and FRONTIER (one "pos=symbol exhausted=<symbols>" line per
/// assigned depth, positions 1-based). UTF-8 with LF endings.
struct Subproblem {
  struct FrontierLine {
    int pos = 0;  // 0-based in memory, 1-based on disk
    char value = 0;
    std::string exhausted;
  };

  int version = 1;
  std::string id;
  Mode mode = Mode::decide;
  BoundInterval bounds;
  int fixed_d = -1;  // decide/enumerate only
  Heuristic heuristic = Heuristic::pwm;
  TieBreak tie_break;
  bool root_sac = false;
  std::string alphabet = "ACGT";
  std::uint64_t nodes = 0;  // cumulative nodes spent on this unit so far

  std::vector<std::string> instance;  // inline rows; empty when referenced
  std::string instance_path;          // reference; empty when inline
  std::uint64_t instance_hash = 0;

  std::vector<std::string> domains;  // per position, e.g. "ACGT" or "AT"
  std::vector<FrontierLine> frontier;

  bool inline_instance() const { return !instance.empty(); }
};

std::uint64_t fnv1a64(std::string_view data);
std::uint64_t instance_content_hash(const std::vector<std::string>& rows);

std::string serialize_subproblem(const Subproblem& sub);

/// Parses and validates a document. Checks the version, the hash of inline
/// instances, domain/alphabet consistency, and that frontier values lie in
/// the stated domains. Throws ParseError or ValidationError.
Subproblem parse_subproblem(std::string_view text);

/// A subproblem turned back into solver inputs.
struct ResolvedSubproblem {
  Model model;
  SearchState state;
  int cap = 0;  // fixed_d, or bounds.high - 1 for optimize units
};

using InstanceLoader = std::function<std::string(const std::string& path)>;

/// Resolves the instance (loading and hash-checking referenced files via the
/// loader), encodes it, and rebuilds the typed model and frontier.
ResolvedSubproblem resolve_subproblem(const Subproblem& sub,
                                      const InstanceLoader& loader = {});

/// Fresh root unit covering a whole instance.
Subproblem make_root_subproblem(std::string id, const StringSet& strings,
                                Mode mode, DomainMode domain_mode, int fixed_d,
                                Heuristic heuristic, TieBreak tie_break = {},
                                bool root_sac = false);

/// Rewrites a unit's frontier/bounds/nodes after a suspension.
Subproblem advance_subproblem(const Subproblem& sub, const SearchState& state,
                              BoundInterval new_bounds);

/// Result document for one completed or suspended unit; shares the
/// subproblem's header keys.
struct ResultDoc {
  int version = 1;
  std::string id;
  Mode mode = Mode::decide;
  BoundInterval bounds;
  int fixed_d = -1;
  Heuristic heuristic = Heuristic::pwm;
  TieBreak tie_break;
  bool root_sac = false;
  std::string alphabet = "ACGT";
  std::uint64_t instance_hash = 0;

  Status status = Status::unsat;
  std::optional<int> best_d;
  std::uint64_t node_count = 0;
  std::vector<std::string> witnesses;
};

ResultDoc make_result(const Subproblem& sub, Status status, std::optional<int> best_d,
                      std::uint64_t node_count, std::vector<std::string> witnesses);
std::string serialize_result(const ResultDoc& doc);
ResultDoc parse_result(std::string_view text);

}  // namespace closest
