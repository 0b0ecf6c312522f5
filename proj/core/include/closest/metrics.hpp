#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "closest/string_set.hpp"

namespace closest {

/// Closed interval of candidate distances. 0 <= low <= high <= L.
struct BoundInterval {
  int low = 0;
  int high = 0;
};

/// Number of positions at which two equal-length rows differ.
/// Throws std::invalid_argument on a length mismatch.
int hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Maximum pairwise Hamming distance within the set; 0 for a single string.
int hamming_diameter(const StringSet& s);

/// Lower bound on the optimal radius: ceil(diameter / 2). Any string closer
/// than this to one end of a diameter pair is at least this far from the other.
int distance_lower_bound(const StringSet& s);

/// Per-position symbol sets: position j holds exactly the symbols occurring
/// in column j of some input string. A closest string can be sought within
/// these without losing optimality (not valid when enumerating all solutions).
std::vector<SymbolSet> position_domains(const StringSet& s);

}  // namespace closest
