#include "closest/search.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "closest/errors.hpp"

namespace closest {

namespace {

std::vector<int> sdf_variable_order(const StringSet& strings, const TieBreak& tie) {
  // Sizes come from the column occupancy sets, not from any narrowed model
  // domains, so the order is identical for every subproblem of one instance.
  const auto occupancy = position_domains(strings);
  std::vector<int> order(strings.length());
  std::iota(order.begin(), order.end(), 0);
  if (tie.kind == TieBreak::Kind::seeded_random) {
    std::mt19937_64 rng(tie.seed ^ 0x5851f42d4c957f2dULL);
    std::vector<std::uint64_t> prio(order.size());
    for (auto& p : prio) p = rng();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const int sa = occupancy[a].size(), sb = occupancy[b].size();
      if (sa != sb) return sa < sb;
      return prio[a] < prio[b];
    });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return occupancy[a].size() < occupancy[b].size();
    });
  }
  return order;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::solved: return "solved";
    case Status::unsat: return "unsat";
    case Status::timeout: return "timeout";
    case Status::resource_limit: return "resource-limit";
  }
  return "?";
}

Searcher::Searcher(const Model& model)
    : model_(model),
      n_(model.count()),
      len_(model.length()),
      sigma_(model.strings.alphabet().size()),
      cap_(model.initial_cap()),
      pwm_(build_pwm(model.strings)),
      domains_(model.domains),
      assignment_(len_, 0),
      mism_(n_, 0),
      forced_(n_, 0) {
  if (static_cast<int>(model.domains.size()) != len_)
    throw std::invalid_argument("model domain count does not match string length");
  for (const auto& d : model.domains)
    if (d.empty() || !d.is_subset_of(model.strings.alphabet().full_set()))
      throw std::invalid_argument("model domain empty or outside alphabet");

  order_ = model.heuristic == Heuristic::pwm
               ? pwm_variable_order(pwm_, model.tie_break)
               : sdf_variable_order(model.strings, model.tie_break);

  value_rank_.resize(len_);
  const SymbolSet full = model.strings.alphabet().full_set();
  for (int pos = 0; pos < len_; ++pos) {
    if (model.heuristic == Heuristic::pwm) {
      value_rank_[pos] = pwm_value_order(pwm_, pos, full, model.tie_break);
    } else {
      value_rank_[pos].resize(sigma_);
      std::iota(value_rank_[pos].begin(), value_rank_[pos].end(), std::uint8_t{1});
    }
  }

  // Initial forced counts: strings whose symbol is already outside a domain.
  for (int i = 0; i < n_; ++i) {
    const auto row = model.strings.row(i);
    for (int j = 0; j < len_; ++j)
      if (!domains_[j].contains(row[j])) ++forced_[i];
  }

  frames_.resize(len_);
  for (auto& f : frames_) {
    f.candidates.reserve(sigma_);
    f.saved_domains.resize(len_);
    f.saved_mism.resize(n_);
    f.saved_forced.resize(n_);
  }
  tight_.reserve(n_);
  queued_.assign(n_, 0);
}

void Searcher::assign(int pos, std::uint8_t value) {
  assignment_[pos] = value;
  for (int i = 0; i < n_; ++i) {
    const std::uint8_t sym = model_.strings.at(i, pos);
    if (sym == value) continue;
    ++mism_[i];
    if (!domains_[pos].contains(sym)) --forced_[i];  // no longer pending, now committed
  }
}

bool Searcher::propagate() {
  tight_.clear();
  for (int i = 0; i < n_; ++i) {
    const int load = mism_[i] + forced_[i];
    if (load > cap_) return false;
    queued_[i] = load == cap_;
    if (queued_[i]) tight_.push_back(i);
  }
  // A string at the cap can afford no further mismatch: every unassigned
  // position that still offers its symbol must take it.
  for (std::size_t qi = 0; qi < tight_.size(); ++qi) {
    const int i = tight_[qi];
    const auto row = model_.strings.row(i);
    for (int j = 0; j < len_; ++j) {
      if (assignment_[j] != 0) continue;
      SymbolSet& dom = domains_[j];
      const std::uint8_t sym = row[j];
      if (!dom.contains(sym) || dom.size() == 1) continue;
      SymbolSet removed = dom;
      removed.remove(sym);
      dom = SymbolSet{};
      dom.add(sym);
      for (int k = 0; k < n_; ++k) {
        const std::uint8_t sk = model_.strings.at(k, j);
        if (sk == sym || !removed.contains(sk)) continue;
        ++forced_[k];
        const int load = mism_[k] + forced_[k];
        if (load > cap_) return false;
        if (load == cap_ && !queued_[k]) {
          queued_[k] = 1;
          tight_.push_back(k);
        }
      }
    }
  }
  return true;
}

void Searcher::save_into(Frame& f) const {
  std::copy(domains_.begin(), domains_.end(), f.saved_domains.begin());
  std::copy(mism_.begin(), mism_.end(), f.saved_mism.begin());
  std::copy(forced_.begin(), forced_.end(), f.saved_forced.begin());
}

void Searcher::restore_from(const Frame& f) {
  std::copy(f.saved_domains.begin(), f.saved_domains.end(), domains_.begin());
  std::copy(f.saved_mism.begin(), f.saved_mism.end(), mism_.begin());
  std::copy(f.saved_forced.begin(), f.saved_forced.end(), forced_.begin());
  assignment_[f.pos] = 0;
}

void Searcher::enter_frame(int depth, SymbolSet pre_exhausted) {
  Frame& f = frames_[depth];
  f.pos = order_[depth];
  save_into(f);
  f.pre_exhausted = pre_exhausted;
  f.candidates.clear();
  for (std::uint8_t c : value_rank_[f.pos])
    if (domains_[f.pos].contains(c) && !pre_exhausted.contains(c))
      f.candidates.push_back(c);
  f.next = 0;
}

std::vector<std::uint8_t> Searcher::ordered_values(int pos) const {
  std::vector<std::uint8_t> out;
  for (std::uint8_t c : value_rank_[pos])
    if (domains_[pos].contains(c)) out.push_back(c);
  return out;
}

SearchState Searcher::capture() const {
  SearchState state;
  state.nodes = nodes_;
  state.path.reserve(top_ + 1);
  for (int k = 0; k <= top_; ++k) {
    const Frame& f = frames_[k];
    FrontierEntry e;
    e.pos = f.pos;
    e.value = f.candidates[f.next - 1];
    e.exhausted = f.pre_exhausted;
    for (int v = 0; v + 1 < f.next; ++v) e.exhausted.add(f.candidates[v]);
    state.path.push_back(e);
  }
  return state;
}

void Searcher::load_frontier(const SearchState& state) {
  if (ran_ || top_ >= 0 || !probe_stack_.empty())
    throw std::logic_error("load_frontier needs a fresh searcher");
  nodes_ = state.nodes;
  resumed_ = true;
  if (static_cast<int>(state.path.size()) > len_)
    throw ValidationError("frontier longer than the string length");

  if (!propagate()) {  // region already empty under this cap
    reconstruction_complete_ = false;
    exhausted_at_load_ = true;
    return;
  }

  for (std::size_t k = 0; k < state.path.size(); ++k) {
    const FrontierEntry& e = state.path[k];
    if (e.pos != order_[k])
      throw ValidationError("frontier position " + std::to_string(e.pos + 1) +
                            " does not follow the variable order");
    if (!model_.domains[e.pos].contains(e.value))
      throw ValidationError("frontier value outside the domain of position " +
                            std::to_string(e.pos + 1));
    if (e.exhausted.contains(e.value))
      throw ValidationError("frontier value marked exhausted at position " +
                            std::to_string(e.pos + 1));
    if (!e.exhausted.is_subset_of(model_.domains[e.pos]))
      throw ValidationError("exhausted set outside the domain of position " +
                            std::to_string(e.pos + 1));

    enter_frame(static_cast<int>(k), e.exhausted);
    top_ = static_cast<int>(k);
    Frame& f = frames_[k];
    const auto it = std::find(f.candidates.begin(), f.candidates.end(), e.value);
    if (it == f.candidates.end()) {
      // Value pruned under the current (possibly tightened) cap; its subtree
      // is dead and the remaining candidates are all still open.
      reconstruction_complete_ = false;
      return;
    }
    f.next = static_cast<int>(it - f.candidates.begin()) + 1;
    restore_from(f);
    assign(f.pos, e.value);
    ++nodes_;
    if (!propagate()) {
      reconstruction_complete_ = false;
      return;
    }
  }
  reconstruction_complete_ = true;
}

double Searcher::elapsed_ms() const {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start_).count();
}

bool Searcher::record_solution(SolveResult& result, const SearchLimits& limits) {
  const int d_leaf = *std::max_element(mism_.begin(), mism_.end());
  switch (model_.mode) {
    case Mode::decide:
      result.witnesses.push_back(decode_row(assignment_, model_.strings.alphabet()));
      result.best_d = d_leaf;
      ++result.stats.solutions;
      result.status = Status::solved;
      return true;
    case Mode::enumerate: {
      std::string witness = decode_row(assignment_, model_.strings.alphabet());
      if (limits.on_solution)
        limits.on_solution(witness);
      else
        result.witnesses.push_back(std::move(witness));
      ++result.stats.solutions;
      return false;
    }
    case Mode::optimize:
      incumbent_ = assignment_;
      incumbent_d_ = d_leaf;
      ++result.stats.solutions;
      result.trace.push_back({elapsed_ms(), d_leaf});
      if (d_leaf <= low_stop_) {
        result.status = Status::solved;
        return true;  // meets the proven lower bound: optimal
      }
      cap_ = d_leaf - 1;
      return false;
  }
  return true;
}

bool Searcher::boundary_checks(SolveResult& result, const SearchLimits& limits) {
  if (limits.checkpoint_interval && limits.checkpoint &&
      run_nodes_ % limits.checkpoint_interval == 0)
    limits.checkpoint(capture());
  if (limits.poll && limits.poll_interval && run_nodes_ % limits.poll_interval == 0) {
    const PollDecision pd = limits.poll();
    if (pd.new_cap && *pd.new_cap < cap_) cap_ = *pd.new_cap;
    if (pd.new_low && *pd.new_low > low_stop_) low_stop_ = *pd.new_low;
    if (pd.abort) {
      result.status = Status::timeout;
      return true;
    }
  }
  if (limits.max_nodes && run_nodes_ >= limits.max_nodes) {
    result.status = Status::resource_limit;
    return true;
  }
  if (limits.max_seconds > 0 && (run_nodes_ & 0xFF) == 0 &&
      elapsed_ms() >= limits.max_seconds * 1000.0) {
    result.status = Status::timeout;
    return true;
  }
  return false;
}

SolveResult Searcher::run(const SearchLimits& limits) {
  if (ran_) throw std::logic_error("Searcher::run may only be called once");
  if (!probe_stack_.empty()) throw std::logic_error("probe assignments still active");
  ran_ = true;
  start_ = std::chrono::steady_clock::now();
  run_nodes_ = 0;
  low_stop_ = model_.bounds.low;

  SolveResult result;
  result.mode = model_.mode;

  bool done = false;
  bool suspended = false;

  if (!resumed_) {
    if (propagate()) {
      enter_frame(0, {});
      top_ = 0;
    } else {
      top_ = -1;
    }
  } else if (exhausted_at_load_) {
    top_ = -1;
  } else if (reconstruction_complete_) {
    if (top_ + 1 == len_) {
      // Split descent can hand over a fully forced path; report its leaf.
      done = record_solution(result, limits);
    } else {
      enter_frame(++top_, {});
    }
  }
  // An incomplete reconstruction leaves the top frame mid-iteration, which is
  // exactly the loop's normal state.

  while (!done && top_ >= 0) {
    Frame& f = frames_[top_];
    if (f.next >= static_cast<int>(f.candidates.size())) {
      --top_;
      continue;
    }
    restore_from(f);
    const std::uint8_t v = f.candidates[f.next++];
    ++nodes_;
    ++run_nodes_;
    assign(f.pos, v);
    if (boundary_checks(result, limits)) {
      suspended = true;
      break;
    }
    if (!propagate()) continue;
    if (top_ + 1 == len_) {
      done = record_solution(result, limits);
      continue;
    }
    enter_frame(++top_, {});
  }

  if (suspended) {
    result.frontier = capture();
  } else if (!done) {
    // Exhausted the region.
    switch (model_.mode) {
      case Mode::optimize:
        result.status = incumbent_d_ ? Status::solved : Status::unsat;
        break;
      case Mode::decide:
        result.status = Status::unsat;
        break;
      case Mode::enumerate:
        result.status = Status::solved;
        break;
    }
  }

  if (model_.mode == Mode::optimize && incumbent_d_) {
    result.best_d = incumbent_d_;
    result.witnesses = {decode_row(incumbent_, model_.strings.alphabet())};
  }
  result.stats.nodes = nodes_;
  result.stats.wall_ms = elapsed_ms();
  return result;
}

bool Searcher::try_assign(int pos, std::uint8_t value) {
  if (assignment_[pos] != 0) throw std::logic_error("position already assigned");
  if (!domains_[pos].contains(value))
    throw std::invalid_argument("value outside the current domain");
  Snapshot snap{domains_, mism_, forced_, pos};
  assign(pos, value);
  if (!propagate()) {
    domains_ = snap.domains;
    mism_ = snap.mism;
    forced_ = snap.forced;
    assignment_[pos] = 0;
    return false;
  }
  probe_stack_.push_back(std::move(snap));
  return true;
}

void Searcher::undo_assign() {
  if (probe_stack_.empty()) throw std::logic_error("no probe assignment to undo");
  Snapshot& snap = probe_stack_.back();
  domains_ = std::move(snap.domains);
  mism_ = std::move(snap.mism);
  forced_ = std::move(snap.forced);
  assignment_[snap.assigned_pos] = 0;
  probe_stack_.pop_back();
}

namespace {

SolveResult run_mode(const Model& model, const SearchLimits& limits) {
  if (model.root_sac) {
    const auto narrowed = root_sac_probe(model);
    if (!narrowed) {
      SolveResult r;
      r.mode = model.mode;
      r.status = Status::unsat;
      return r;
    }
    Searcher searcher(*narrowed);
    return searcher.run(limits);
  }
  Searcher searcher(model);
  return searcher.run(limits);
}

}  // namespace

SolveResult solve_min(const Model& model, const SearchLimits& limits) {
  if (model.mode != Mode::optimize)
    throw std::invalid_argument("solve_min needs an optimize-mode model");
  return run_mode(model, limits);
}

SolveResult decide(const Model& model, const SearchLimits& limits) {
  if (model.mode != Mode::decide)
    throw std::invalid_argument("decide needs a decide-mode model");
  if (model.fixed_d < model.bounds.low) {
    // Below the diameter bound no string can exist; settled without search.
    SolveResult r;
    r.mode = model.mode;
    r.status = Status::unsat;
    return r;
  }
  return run_mode(model, limits);
}

SolveResult enumerate_all(const Model& model, const SearchLimits& limits) {
  if (model.mode != Mode::enumerate)
    throw std::invalid_argument("enumerate_all needs an enumerate-mode model");
  return run_mode(model, limits);
}

std::optional<Model> root_sac_probe(const Model& model) {
  Searcher probe(model);
  Model narrowed = model;
  for (int pos = 0; pos < model.length(); ++pos) {
    for (std::uint8_t c = 1; c <= model.strings.alphabet().size(); ++c) {
      if (!model.domains[pos].contains(c)) continue;
      if (probe.try_assign(pos, c)) {
        probe.undo_assign();
      } else {
        narrowed.domains[pos].remove(c);
      }
    }
    if (narrowed.domains[pos].empty()) return std::nullopt;
  }
  return narrowed;
}

}  // namespace closest
