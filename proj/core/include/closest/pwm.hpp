#pragma once

#include <cstdint>
#include <vector>

#include "closest/string_set.hpp"

namespace closest {

/// Tie-break policy for the search orderings. Least-index is the
/// deterministic default; the seeded mode draws stable random priorities.
struct TieBreak {
  enum class Kind { least_index, seeded_random };
  Kind kind = Kind::least_index;
  std::uint64_t seed = 0;

  static TieBreak least_index() { return {}; }
  static TieBreak seeded(std::uint64_t s) { return {Kind::seeded_random, s}; }
};

/// Position weight matrix: per-position occurrence counts of each symbol.
/// Every column of a built matrix sums to the number of input strings.
class Pwm {
 public:
  Pwm(int sigma, int length);

  int sigma() const { return sigma_; }
  int length() const { return length_; }

  int count(std::uint8_t code, int pos) const {
    return counts_[static_cast<std::size_t>(code - 1) * length_ + pos];
  }
  int& count(std::uint8_t code, int pos) {
    return counts_[static_cast<std::size_t>(code - 1) * length_ + pos];
  }

  /// Largest count in a column, i.e. the frequency of its consensus symbol.
  int column_max(int pos) const;

 private:
  int sigma_;
  int length_;
  std::vector<int> counts_;
};

Pwm build_pwm(const StringSet& s);

/// Positions sorted by descending column maximum: the search assigns the
/// most-conserved positions first. Ties go to the lower position index, or
/// to seeded random priorities.
std::vector<int> pwm_variable_order(const Pwm& pwm, const TieBreak& tie = {});

/// Domain symbols sorted by descending count at the position, most frequent
/// first. Ties go to the lower symbol code, or to seeded random priorities.
/// Symbols absent from the column order after present ones.
std::vector<std::uint8_t> pwm_value_order(const Pwm& pwm, int pos, SymbolSet domain,
                                          const TieBreak& tie = {});

}  // namespace closest
