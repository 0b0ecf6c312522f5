#include "closest/model.hpp"

#include <stdexcept>

namespace closest {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::optimize: return "optimize";
    case Mode::decide: return "decide";
    case Mode::enumerate: return "enumerate";
  }
  return "?";
}

const char* to_string(Heuristic h) {
  return h == Heuristic::pwm ? "pwm" : "sdf";
}

Model build_model(StringSet strings, Mode mode, Heuristic heuristic,
                  DomainMode domain_mode, int fixed_d, TieBreak tie_break,
                  bool root_sac) {
  const int length = strings.length();
  if (mode != Mode::optimize && (fixed_d < 0 || fixed_d > length))
    throw std::invalid_argument("fixed distance " + std::to_string(fixed_d) +
                                " outside [0, " + std::to_string(length) + "]");

  Model m{.strings = std::move(strings),
          .domains = {},
          .bounds = {},
          .mode = mode,
          .fixed_d = mode == Mode::optimize ? -1 : fixed_d,
          .heuristic = heuristic,
          .tie_break = tie_break,
          .root_sac = root_sac};
  m.bounds = {distance_lower_bound(m.strings), hamming_diameter(m.strings)};
  m.domains = domain_mode == DomainMode::restricted
                  ? position_domains(m.strings)
                  : std::vector<SymbolSet>(length, m.strings.alphabet().full_set());
  return m;
}

}  // namespace closest
