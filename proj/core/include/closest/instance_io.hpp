#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "closest/string_set.hpp"

namespace closest {

enum class InstanceFormat { plain, fasta };

/// Parsed instance text: raw strings plus optional per-string labels.
/// Symbols are normalized to upper case; lengths are checked, alphabet
/// membership is not (that happens at encode time).
struct InstanceDoc {
  InstanceFormat format = InstanceFormat::plain;
  std::vector<std::string> names;  // empty for plain input
  std::vector<std::string> strings;
};

/// Plain format: one string per line, blank lines and '#' comments ignored.
/// FASTA: '>' starts a record, sequence lines concatenate. Without a hint the
/// format is detected from the first significant character. Throws ParseError
/// on empty input or unequal lengths.
InstanceDoc parse_instance(std::string_view text,
                           std::optional<InstanceFormat> hint = std::nullopt);

/// Renders a document back to text; parse(format_instance(doc)) == doc.
std::string format_instance(const InstanceDoc& doc, InstanceFormat format);

/// parse + encode in one step.
StringSet load_string_set(std::string_view text, const Alphabet& alphabet,
                          std::optional<InstanceFormat> hint = std::nullopt);

/// N uniform i.i.d. strings of length L from a seeded generator; the same
/// seed always yields the same instance.
InstanceDoc generate_instance(int n, int length, const Alphabet& alphabet,
                              std::uint64_t seed);

/// One benchmark measurement: a solved instance plus its search statistics
/// and the incumbent trace (elapsed-ms:distance pairs).
struct BenchRow {
  std::string instance_id;
  int n = 0;
  int length = 0;
  std::uint64_t seed = 0;
  std::string heuristic;
  std::string mode;
  int best_d = 0;
  std::uint64_t nodes = 0;
  double wall_ms = 0;
  std::vector<std::pair<double, int>> incumbents;
};

/// Header plus one line per row, RFC-4180 quoting.
std::string write_bench_csv(const std::vector<BenchRow>& rows);

}  // namespace closest
