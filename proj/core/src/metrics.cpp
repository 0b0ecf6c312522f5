#include "closest/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace closest {

int hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming distance needs equal-length rows");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

int hamming_diameter(const StringSet& s) {
  int best = 0;
  for (int i = 0; i < s.count(); ++i)
    for (int j = i + 1; j < s.count(); ++j)
      best = std::max(best, hamming_distance(s.row(i), s.row(j)));
  return best;
}

int distance_lower_bound(const StringSet& s) {
  return (hamming_diameter(s) + 1) / 2;
}

std::vector<SymbolSet> position_domains(const StringSet& s) {
  std::vector<SymbolSet> domains(s.length());
  for (int i = 0; i < s.count(); ++i) {
    const auto row = s.row(i);
    for (int j = 0; j < s.length(); ++j) domains[j].add(row[j]);
  }
  return domains;
}

}  // namespace closest
