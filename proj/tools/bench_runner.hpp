#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "closest/instance_io.hpp"
#include "closest/model.hpp"

namespace closest::bench {

struct GridConfig {
  std::vector<int> n_values{3, 4, 5, 6};
  std::vector<int> l_values{10, 15};
  int seeds = 10;
  std::vector<Heuristic> heuristics{Heuristic::pwm, Heuristic::sdf};
  int jobs = 1;
  std::uint64_t max_nodes_per_run = 0;  // 0 = unlimited
};

/// Full optimization over the N x L x seed grid, once per heuristic. Rows
/// come back in grid order regardless of how many jobs ran them.
std::vector<BenchRow> run_grid(const GridConfig& cfg);

}  // namespace closest::bench
