#include "bench_runner.hpp"

#include <atomic>
#include <thread>

#include "closest/search.hpp"

namespace closest::bench {

std::vector<BenchRow> run_grid(const GridConfig& cfg) {
  struct Task {
    int n, l;
    std::uint64_t seed;
    Heuristic heuristic;
  };
  std::vector<Task> tasks;
  for (int n : cfg.n_values)
    for (int l : cfg.l_values)
      for (int s = 1; s <= cfg.seeds; ++s)
        for (Heuristic h : cfg.heuristics)
          tasks.push_back({n, l, static_cast<std::uint64_t>(s), h});

  std::vector<BenchRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};

  const auto run_task = [&](std::size_t index) {
    const Task& t = tasks[index];
    const auto doc = generate_instance(t.n, t.l, Alphabet::dna(), t.seed);
    const auto strings = encode_strings(doc.strings, Alphabet::dna());
    const Model model =
        build_model(strings, Mode::optimize, t.heuristic, DomainMode::restricted);
    SearchLimits limits;
    limits.max_nodes = cfg.max_nodes_per_run;
    const SolveResult result = solve_min(model, limits);

    BenchRow row;
    row.instance_id = "n" + std::to_string(t.n) + "l" + std::to_string(t.l) + "s" +
                      std::to_string(t.seed);
    row.n = t.n;
    row.length = t.l;
    row.seed = t.seed;
    row.heuristic = to_string(t.heuristic);
    row.mode = to_string(Mode::optimize);
    row.best_d = result.best_d.value_or(-1);
    row.nodes = result.stats.nodes;
    row.wall_ms = result.stats.wall_ms;
    for (const auto& p : result.trace) row.incumbents.emplace_back(p.elapsed_ms, p.d);
    rows[index] = std::move(row);
  };

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
          run_task(i);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace closest::bench
