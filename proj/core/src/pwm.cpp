#include "closest/pwm.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace closest {

namespace {

// Stable per-item priorities for the seeded tie-break mode. A fresh engine
// per (seed, stream) keeps orderings independent of call order.
std::vector<std::uint64_t> tie_priorities(std::uint64_t seed, std::uint64_t stream, int n) {
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  std::vector<std::uint64_t> prio(n);
  for (auto& p : prio) p = rng();
  return prio;
}

}  // namespace

Pwm::Pwm(int sigma, int length)
    : sigma_(sigma), length_(length),
      counts_(static_cast<std::size_t>(sigma) * length, 0) {}

int Pwm::column_max(int pos) const {
  int best = 0;
  for (std::uint8_t c = 1; c <= sigma_; ++c) best = std::max(best, count(c, pos));
  return best;
}

Pwm build_pwm(const StringSet& s) {
  Pwm pwm(s.alphabet().size(), s.length());
  for (int i = 0; i < s.count(); ++i) {
    const auto row = s.row(i);
    for (int j = 0; j < s.length(); ++j) ++pwm.count(row[j], j);
  }
  return pwm;
}

std::vector<int> pwm_variable_order(const Pwm& pwm, const TieBreak& tie) {
  const int len = pwm.length();
  std::vector<int> order(len);
  std::iota(order.begin(), order.end(), 0);
  if (tie.kind == TieBreak::Kind::seeded_random) {
    const auto prio = tie_priorities(tie.seed, 0, len);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const int ma = pwm.column_max(a), mb = pwm.column_max(b);
      if (ma != mb) return ma > mb;
      return prio[a] < prio[b];
    });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return pwm.column_max(a) > pwm.column_max(b);
    });
  }
  return order;
}

std::vector<std::uint8_t> pwm_value_order(const Pwm& pwm, int pos, SymbolSet domain,
                                          const TieBreak& tie) {
  std::vector<std::uint8_t> values;
  for (std::uint8_t c = 1; c <= pwm.sigma(); ++c)
    if (domain.contains(c)) values.push_back(c);
  if (tie.kind == TieBreak::Kind::seeded_random) {
    const auto prio = tie_priorities(tie.seed, 1 + pos, pwm.sigma());
    std::stable_sort(values.begin(), values.end(), [&](std::uint8_t a, std::uint8_t b) {
      const int ca = pwm.count(a, pos), cb = pwm.count(b, pos);
      if (ca != cb) return ca > cb;
      return prio[a - 1] < prio[b - 1];
    });
  } else {
    std::stable_sort(values.begin(), values.end(), [&](std::uint8_t a, std::uint8_t b) {
      return pwm.count(a, pos) > pwm.count(b, pos);
    });
  }
  return values;
}

}  // namespace closest
