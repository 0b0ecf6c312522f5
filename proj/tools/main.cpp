#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bench_runner.hpp"
#include "closest/coordinator.hpp"
#include "closest/errors.hpp"
#include "closest/instance_io.hpp"
#include "closest/search.hpp"
#include "closest/split.hpp"
#include "closest/subproblem.hpp"
#include "closest/worker.hpp"

namespace {

using namespace closest;

constexpr int kExitSolved = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceLimit = 3;
constexpr int kExitInputError = 4;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

struct SearchFlags {
  std::string instance_path;
  std::string format;
  std::string alphabet = "ACGT";
  std::string heuristic = "pwm";
  std::string tie_break = "least-index";
  std::uint64_t seed = 0;
  bool unrestricted = false;
  bool root_sac = false;
  std::int64_t max_nodes = 0;
  double max_seconds = 0;
  std::string trace_out;
  std::string frontier_out;
};

void add_search_flags(CLI::App* cmd, SearchFlags& flags, bool with_unrestricted) {
  cmd->add_option("instance", flags.instance_path,
                  "instance file (plain or FASTA), '-' for stdin")
      ->required();
  cmd->add_option("--format", flags.format, "force input format: plain|fasta");
  cmd->add_option("--alphabet", flags.alphabet, "ordered symbol characters");
  cmd->add_option("--heuristic", flags.heuristic, "variable/value ordering: pwm|sdf");
  cmd->add_option("--tie-break", flags.tie_break, "ordering ties: least-index|random");
  cmd->add_option("--seed", flags.seed, "seed for --tie-break random");
  if (with_unrestricted)
    cmd->add_flag("--unrestricted", flags.unrestricted,
                  "search over the full alphabet at every position");
  cmd->add_flag("--root-sac", flags.root_sac, "singleton probe at the root before search");
  cmd->add_option("--max-nodes", flags.max_nodes, "node budget (0 = unlimited)");
  cmd->add_option("--max-seconds", flags.max_seconds, "wall budget (0 = unlimited)");
  cmd->add_option("--trace-out", flags.trace_out,
                  "write incumbent trace 't,d' lines here instead of stderr");
  cmd->add_option("--frontier-out", flags.frontier_out,
                  "on suspension, write the resumable subproblem here");
}

Model model_from_flags(const SearchFlags& flags, Mode mode, int fixed_d,
                       StringSet* out_strings = nullptr) {
  std::optional<InstanceFormat> hint;
  if (flags.format == "plain") hint = InstanceFormat::plain;
  else if (flags.format == "fasta") hint = InstanceFormat::fasta;
  else if (!flags.format.empty()) throw ParseError("unknown --format " + flags.format);

  const Alphabet alphabet(flags.alphabet);
  StringSet strings = load_string_set(read_input(flags.instance_path), alphabet, hint);
  if (out_strings) *out_strings = strings;

  Heuristic heuristic;
  if (flags.heuristic == "pwm") heuristic = Heuristic::pwm;
  else if (flags.heuristic == "sdf") heuristic = Heuristic::sdf;
  else throw ParseError("unknown --heuristic " + flags.heuristic);

  TieBreak tie;
  if (flags.tie_break == "least-index") tie = TieBreak::least_index();
  else if (flags.tie_break == "random") tie = TieBreak::seeded(flags.seed);
  else throw ParseError("unknown --tie-break " + flags.tie_break);

  const DomainMode domain_mode =
      flags.unrestricted ? DomainMode::unrestricted : DomainMode::restricted;
  return build_model(std::move(strings), mode, heuristic, domain_mode, fixed_d, tie,
                     flags.root_sac);
}

SearchLimits limits_from_flags(const SearchFlags& flags) {
  SearchLimits limits;
  if (flags.max_nodes > 0) limits.max_nodes = static_cast<std::uint64_t>(flags.max_nodes);
  if (flags.max_seconds > 0) limits.max_seconds = flags.max_seconds;
  return limits;
}

void emit_trace(const SearchFlags& flags, const SolveResult& result) {
  std::string text;
  for (const auto& p : result.trace) {
    std::ostringstream line;
    line.precision(3);
    line << std::fixed << p.elapsed_ms << "," << p.d << "\n";
    text += line.str();
  }
  if (flags.trace_out.empty()) std::cerr << text;
  else write_output(flags.trace_out, text);
}

void emit_frontier(const SearchFlags& flags, const Model& model, Mode mode, int fixed_d,
                   const SolveResult& result, int cap) {
  if (flags.frontier_out.empty() || !result.frontier) return;
  Subproblem sub = make_root_subproblem("cli", model.strings, mode,
                                        DomainMode::restricted, fixed_d, model.heuristic,
                                        model.tie_break, model.root_sac);
  sub.domains.clear();
  for (const auto& d : model.domains)
    sub.domains.push_back(model.strings.alphabet().chars_of(d));
  const BoundInterval bounds{model.bounds.low,
                             mode == Mode::optimize ? cap + 1 : model.bounds.high};
  sub = advance_subproblem(sub, *result.frontier, bounds);
  write_output(flags.frontier_out, serialize_subproblem(sub));
}

int suspended_exit(const SolveResult& result) {
  std::cout << to_string(result.status) << "\n";
  std::cout << "nodes=" << result.stats.nodes << "\n";
  return kExitResourceLimit;
}

int run_solve(const SearchFlags& flags) {
  const Model model = model_from_flags(flags, Mode::optimize, -1);
  Searcher searcher(model);
  const SolveResult result = searcher.run(limits_from_flags(flags));
  emit_trace(flags, result);
  if (result.status == Status::timeout || result.status == Status::resource_limit) {
    emit_frontier(flags, model, Mode::optimize, -1, result, searcher.cap());
    if (result.best_d) {
      std::cout << "incumbent_d=" << *result.best_d << "\n"
                << "incumbent=" << result.witnesses.front() << "\n";
    }
    return suspended_exit(result);
  }
  std::cout << "d=" << *result.best_d << "\n";
  std::cout << "witness=" << result.witnesses.front() << "\n";
  std::cout << "nodes=" << result.stats.nodes << "\n";
  return kExitSolved;
}

int run_decide(const SearchFlags& flags, int fixed_d) {
  const Model model = model_from_flags(flags, Mode::decide, fixed_d);
  const SolveResult result = decide(model, limits_from_flags(flags));
  if (result.status == Status::timeout || result.status == Status::resource_limit)
    return suspended_exit(result);
  if (result.status == Status::unsat) {
    std::cout << "unsat\n";
    std::cout << "nodes=" << result.stats.nodes << "\n";
    return kExitUnsat;
  }
  std::cout << "witness=" << result.witnesses.front() << "\n";
  std::cout << "d=" << *result.best_d << "\n";
  std::cout << "nodes=" << result.stats.nodes << "\n";
  return kExitSolved;
}

int run_enumerate(const SearchFlags& flags, int fixed_d) {
  const Model model = model_from_flags(flags, Mode::enumerate, fixed_d);
  const SolveResult result = enumerate_all(model, limits_from_flags(flags));
  if (result.status == Status::timeout || result.status == Status::resource_limit)
    return suspended_exit(result);
  std::cout << "count=" << result.witnesses.size() << "\n";
  for (const auto& w : result.witnesses) std::cout << w << "\n";
  std::cerr << "nodes=" << result.stats.nodes << "\n";
  return kExitSolved;
}

int run_gen(int n, int l, std::uint64_t seed, const std::string& alphabet_chars,
            bool fasta, const std::string& out) {
  const Alphabet alphabet(alphabet_chars);
  const InstanceDoc doc = generate_instance(n, l, alphabet, seed);
  write_output(out, format_instance(doc, fasta ? InstanceFormat::fasta
                                               : InstanceFormat::plain));
  return kExitSolved;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

int run_bench(const std::string& n_list, const std::string& l_list, int seeds, int jobs,
              const std::string& heuristics, std::int64_t max_nodes,
              const std::string& out) {
  bench::GridConfig cfg;
  if (!n_list.empty()) cfg.n_values = parse_int_list(n_list);
  if (!l_list.empty()) cfg.l_values = parse_int_list(l_list);
  cfg.seeds = seeds;
  cfg.jobs = jobs;
  if (max_nodes > 0) cfg.max_nodes_per_run = static_cast<std::uint64_t>(max_nodes);
  if (!heuristics.empty()) {
    cfg.heuristics.clear();
    std::stringstream ss(heuristics);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "pwm") cfg.heuristics.push_back(Heuristic::pwm);
      else if (item == "sdf") cfg.heuristics.push_back(Heuristic::sdf);
      else throw ParseError("unknown heuristic in --heuristics: " + item);
    }
  }
  const auto rows = bench::run_grid(cfg);
  write_output(out, write_bench_csv(rows));
  std::cout << "wrote " << out << ": " << rows.size() << " rows\n";
  return kExitSolved;
}

std::string default_queue_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("CLOSEST_QUEUE_DIR")) return env;
  return "queue";
}

int run_coordinate(const SearchFlags& flags, const std::string& queue_dir, double tmax,
                   std::int64_t tmax_nodes, int k, int workers, double max_total_seconds) {
  StringSet strings = load_string_set(read_input(flags.instance_path),
                                      Alphabet(flags.alphabet));
  RunConfig cfg;
  cfg.queue_dir = queue_dir;
  cfg.tmax_seconds = tmax;
  cfg.tmax_nodes = tmax_nodes;
  cfg.split_k = k;
  cfg.workers = workers;
  cfg.max_total_seconds = max_total_seconds;
  if (flags.heuristic == "sdf") cfg.heuristic = Heuristic::sdf;
  if (flags.tie_break == "random") cfg.tie_break = TieBreak::seeded(flags.seed);
  cfg.root_sac = flags.root_sac;

  const SolveResult result = coordinate(strings, cfg);
  if (result.status == Status::resource_limit || result.status == Status::timeout) {
    if (result.best_d)
      std::cout << "incumbent_d=" << *result.best_d << "\n"
                << "incumbent=" << result.witnesses.front() << "\n";
    return suspended_exit(result);
  }
  std::cout << "d=" << *result.best_d << "\n";
  std::cout << "witness=" << result.witnesses.front() << "\n";
  std::cout << "nodes=" << result.stats.nodes << "\n";
  return kExitSolved;
}

int run_worker_cmd(const std::string& queue_dir, double tmax, std::int64_t tmax_nodes,
                   int k, std::uint64_t checkpoint_nodes, std::uint64_t poll_nodes,
                   bool once, bool wait_for_halt) {
  WorkQueue queue{std::filesystem::path(queue_dir)};
  BoundBoard board(queue.bounds_file());
  WorkerConfig cfg;
  cfg.tmax_seconds = tmax;
  cfg.tmax_nodes = tmax_nodes;
  cfg.split_k = k;
  cfg.checkpoint_nodes = checkpoint_nodes;
  cfg.poll_nodes = poll_nodes;
  if (once) {
    work_one(queue, &board, cfg);
    return kExitSolved;
  }
  work_until_done(queue, &board, cfg, /*exit_when_empty=*/!wait_for_halt);
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact closest string solver"};
  app.require_subcommand(1);

  SearchFlags flags;
  int fixed_d = 0;

  auto* solve = app.add_subcommand("solve", "minimize the Hamming radius");
  add_search_flags(solve, flags, true);

  auto* dec = app.add_subcommand("decide", "is there a string within --d of the input?");
  add_search_flags(dec, flags, true);
  dec->add_option("--d", fixed_d, "distance to decide")->required();

  auto* enu = app.add_subcommand("enumerate", "all strings within --d of the input");
  add_search_flags(enu, flags, true);
  enu->add_option("--d", fixed_d, "distance bound (use the verified optimum)")
      ->required();

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  int gen_n = 5, gen_l = 25;
  std::uint64_t gen_seed = 1;
  std::string gen_alphabet = "ACGT", gen_out;
  bool gen_fasta = false;
  gen->add_option("--n", gen_n, "number of strings")->required();
  gen->add_option("--l", gen_l, "string length")->required();
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--alphabet", gen_alphabet, "ordered symbol characters");
  gen->add_flag("--fasta", gen_fasta, "emit FASTA instead of plain lines");
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "PWM-vs-SDF node/time grid");
  std::string bench_n, bench_l, bench_heuristics, bench_out = "bench.csv";
  int bench_seeds = 10, bench_jobs = 1;
  std::int64_t bench_max_nodes = 0;
  bench_cmd->add_option("--n-list", bench_n, "comma list of string counts (default 3,4,5,6)");
  bench_cmd->add_option("--l-list", bench_l, "comma list of lengths (default 10,15)");
  bench_cmd->add_option("--seeds", bench_seeds, "seeds per combination");
  bench_cmd->add_option("--jobs", bench_jobs, "parallel searches");
  bench_cmd->add_option("--heuristics", bench_heuristics, "comma list (default pwm,sdf)");
  bench_cmd->add_option("--max-nodes", bench_max_nodes, "per-run node budget");
  bench_cmd->add_option("--out", bench_out, "CSV output path");

  auto* coord = app.add_subcommand("coordinate", "distributed two-front minimization");
  add_search_flags(coord, flags, false);
  std::string coord_queue;
  double coord_tmax = -1, coord_total = -1;
  std::int64_t coord_tmax_nodes = -1;
  int coord_k = 2, coord_workers = 1;
  coord->add_option("--queue", coord_queue, "queue directory (or $CLOSEST_QUEUE_DIR)");
  coord->add_option("--tmax", coord_tmax, "per-unit cutoff in seconds");
  coord->add_option("--tmax-nodes", coord_tmax_nodes, "per-unit cutoff in nodes");
  coord->add_option("--k", coord_k, "split branching factor");
  coord->add_option("--workers", coord_workers, "in-process worker threads");
  coord->add_option("--max-total-seconds", coord_total, "overall wall cap");

  auto* worker_cmd = app.add_subcommand("worker", "process units from a queue directory");
  std::string worker_queue;
  double worker_tmax = -1;
  std::int64_t worker_tmax_nodes = -1;
  int worker_k = 2;
  std::uint64_t worker_checkpoint = 0, worker_poll = 10000;
  bool worker_once = false, worker_wait = false;
  worker_cmd->add_option("--queue", worker_queue, "queue directory (or $CLOSEST_QUEUE_DIR)");
  worker_cmd->add_option("--tmax", worker_tmax, "per-unit cutoff in seconds");
  worker_cmd->add_option("--tmax-nodes", worker_tmax_nodes, "per-unit cutoff in nodes");
  worker_cmd->add_option("--k", worker_k, "split branching factor");
  worker_cmd->add_option("--checkpoint-nodes", worker_checkpoint,
                         "rewrite the claimed unit every this many nodes");
  worker_cmd->add_option("--poll-nodes", worker_poll, "bound-board poll interval");
  worker_cmd->add_flag("--once", worker_once, "process a single unit and exit");
  worker_cmd->add_flag("--wait", worker_wait, "keep waiting for work until halt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(flags);
    if (dec->parsed()) return run_decide(flags, fixed_d);
    if (enu->parsed()) return run_enumerate(flags, fixed_d);
    if (gen->parsed())
      return run_gen(gen_n, gen_l, gen_seed, gen_alphabet, gen_fasta, gen_out);
    if (bench_cmd->parsed())
      return run_bench(bench_n, bench_l, bench_seeds, bench_jobs, bench_heuristics,
                       bench_max_nodes, bench_out);
    if (coord->parsed())
      return run_coordinate(flags, default_queue_dir(coord_queue), coord_tmax,
                            coord_tmax_nodes, coord_k, coord_workers, coord_total);
    if (worker_cmd->parsed())
      return run_worker_cmd(default_queue_dir(worker_queue), worker_tmax,
                            worker_tmax_nodes, worker_k, worker_checkpoint, worker_poll,
                            worker_once, worker_wait);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
