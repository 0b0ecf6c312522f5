#include "oracle.hpp"

#include <algorithm>

namespace closest::oracle {

int max_distance(const std::vector<std::uint8_t>& candidate, const StringSet& s) {
  int worst = 0;
  for (int i = 0; i < s.count(); ++i) {
    const auto row = s.row(i);
    int d = 0;
    for (int j = 0; j < s.length(); ++j) d += row[j] != candidate[j];
    worst = std::max(worst, d);
  }
  return worst;
}

namespace {

// Calls visit(candidate) for every string over the per-position value lists.
template <typename Visit>
void odometer(const std::vector<std::vector<std::uint8_t>>& values, Visit&& visit) {
  const int length = static_cast<int>(values.size());
  std::vector<int> idx(length, 0);
  std::vector<std::uint8_t> candidate(length);
  for (int j = 0; j < length; ++j) candidate[j] = values[j][0];
  for (;;) {
    visit(candidate);
    int j = length - 1;
    while (j >= 0 && idx[j] + 1 == static_cast<int>(values[j].size())) {
      idx[j] = 0;
      candidate[j] = values[j][0];
      --j;
    }
    if (j < 0) return;
    ++idx[j];
    candidate[j] = values[j][idx[j]];
  }
}

std::vector<std::vector<std::uint8_t>> full_values(const StringSet& s) {
  std::vector<std::uint8_t> all;
  for (std::uint8_t c = 1; c <= s.alphabet().size(); ++c) all.push_back(c);
  return std::vector<std::vector<std::uint8_t>>(s.length(), all);
}

}  // namespace

int brute_force_min_d(const StringSet& s) {
  int best = s.length() + 1;
  odometer(full_values(s), [&](const std::vector<std::uint8_t>& candidate) {
    best = std::min(best, max_distance(candidate, s));
  });
  return best;
}

std::vector<std::string> brute_force_all(const StringSet& s, int d,
                                         const std::vector<SymbolSet>& domains) {
  std::vector<std::vector<std::uint8_t>> values(s.length());
  for (int j = 0; j < s.length(); ++j)
    for (std::uint8_t c = 1; c <= s.alphabet().size(); ++c)
      if (domains[j].contains(c)) values[j].push_back(c);
  std::vector<std::string> out;
  odometer(values, [&](const std::vector<std::uint8_t>& candidate) {
    if (max_distance(candidate, s) <= d)
      out.push_back(decode_row(candidate, s.alphabet()));
  });
  return out;
}

std::vector<std::string> brute_force_all_full(const StringSet& s, int d) {
  return brute_force_all(s, d, std::vector<SymbolSet>(
                                   s.length(), s.alphabet().full_set()));
}

}  // namespace closest::oracle
