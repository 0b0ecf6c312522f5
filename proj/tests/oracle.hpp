#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "closest/string_set.hpp"

// Brute-force reference answers, kept independent of the search engine:
// candidates are enumerated with a plain odometer and distances counted
// directly off the rows.
namespace closest::oracle {

int max_distance(const std::vector<std::uint8_t>& candidate, const StringSet& s);

/// Minimum over all |Sigma|^L candidate strings of the max distance to s.
int brute_force_min_d(const StringSet& s);

/// Every candidate over the given per-position domains whose max distance
/// is <= d, decoded, in odometer order.
std::vector<std::string> brute_force_all(const StringSet& s, int d,
                                         const std::vector<SymbolSet>& domains);

/// Same over the full alphabet at every position.
std::vector<std::string> brute_force_all_full(const StringSet& s, int d);

}  // namespace closest::oracle
