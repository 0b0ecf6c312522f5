#include "closest/split.hpp"

#include <algorithm>

#include "closest/errors.hpp"
#include "closest/search.hpp"

namespace closest {

namespace {

// Near-equal contiguous partition of values (kept in order) into
// min(k, values.size()) groups.
std::vector<std::vector<std::uint8_t>> partition_values(
    const std::vector<std::uint8_t>& values, int k) {
  const int n = static_cast<int>(values.size());
  const int groups = std::min(k, n);
  std::vector<std::vector<std::uint8_t>> out(groups);
  const int base = n / groups;
  const int extra = n % groups;
  int at = 0;
  for (int g = 0; g < groups; ++g) {
    const int take = base + (g < extra ? 1 : 0);
    out[g].assign(values.begin() + at, values.begin() + at + take);
    at += take;
  }
  return out;
}

Subproblem child_of(const Subproblem& sub, int index) {
  Subproblem child = sub;
  child.id = sub.id + "." + std::to_string(index);
  child.nodes = 0;
  child.frontier.clear();
  return child;
}

}  // namespace

std::vector<Subproblem> split(const Subproblem& sub, int k, const InstanceLoader& loader) {
  if (k < 2) throw std::invalid_argument("split needs k >= 2");

  ResolvedSubproblem resolved = resolve_subproblem(sub, loader);
  const Alphabet& alphabet = resolved.model.strings.alphabet();
  const int length = resolved.model.length();

  Searcher searcher(resolved.model);
  searcher.set_cap(resolved.cap);
  if (!searcher.propagate_now()) return {};  // region empty under its own cap

  const auto& order = searcher.variable_order();

  // The prefix accumulated so far, in on-disk form.
  std::vector<Subproblem::FrontierLine> prefix;
  prefix.reserve(length);

  auto make_children = [&](int pos, const std::vector<std::uint8_t>& open,
                           const FrontierEntry* committed,
                           std::size_t deeper_from) {
    const auto groups = partition_values(open, k);
    std::vector<Subproblem> children;
    children.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      Subproblem child = child_of(sub, static_cast<int>(g));
      child.frontier = prefix;
      SymbolSet group_set;
      for (std::uint8_t v : groups[g]) group_set.add(v);
      child.domains[pos] = alphabet.chars_of(group_set);
      if (committed && group_set.contains(committed->value)) {
        // This child carries the partially explored subtree onward.
        Subproblem::FrontierLine line;
        line.pos = pos;
        line.value = alphabet.decode(committed->value);
        line.exhausted = alphabet.chars_of(committed->exhausted & group_set);
        child.frontier.push_back(std::move(line));
        for (std::size_t d = deeper_from; d < sub.frontier.size(); ++d)
          child.frontier.push_back(sub.frontier[d]);
      }
      children.push_back(std::move(child));
    }
    return children;
  };

  // Walk the assigned depths looking for the shallowest one with open work.
  for (std::size_t depth = 0; depth < resolved.state.path.size(); ++depth) {
    const FrontierEntry& entry = resolved.state.path[depth];
    if (entry.pos != order[depth])
      throw ValidationError("frontier does not follow the unit's variable order");

    const auto candidates = searcher.ordered_values(entry.pos);
    std::vector<std::uint8_t> open;
    for (std::uint8_t v : candidates)
      if (!entry.exhausted.contains(v)) open.push_back(v);

    if (open.empty()) return {};  // everything here explored or pruned

    const bool has_committed =
        std::find(open.begin(), open.end(), entry.value) != open.end();

    if (open.size() == 1 && has_committed) {
      // Only the committed path continues here; descend.
      if (!searcher.try_assign(entry.pos, entry.value)) return {};
      prefix.push_back(sub.frontier[depth]);
      continue;
    }
    if (open.size() == 1) {
      // The committed subtree is pruned; one fresh value remains.
      Subproblem child = child_of(sub, 0);
      child.frontier = prefix;
      SymbolSet only;
      only.add(open.front());
      child.domains[entry.pos] = alphabet.chars_of(only);
      return {std::move(child)};
    }
    return make_children(entry.pos, open, has_committed ? &entry : nullptr, depth + 1);
  }

  // All assigned depths are closed; split below the path.
  int depth = static_cast<int>(resolved.state.path.size());
  while (depth < length) {
    const int pos = order[depth];
    const auto candidates = searcher.ordered_values(pos);
    if (candidates.empty()) return {};
    if (candidates.size() >= 2) return make_children(pos, candidates, nullptr, 0);
    // Forced singleton: commit it into the prefix and keep descending.
    if (!searcher.try_assign(pos, candidates.front())) return {};
    Subproblem::FrontierLine line;
    line.pos = pos;
    line.value = alphabet.decode(candidates.front());
    prefix.push_back(std::move(line));
    ++depth;
  }

  // Fully forced completion below the path: one child whose resume reports it.
  Subproblem leaf = child_of(sub, 0);
  leaf.frontier = std::move(prefix);
  return {std::move(leaf)};
}

}  // namespace closest
