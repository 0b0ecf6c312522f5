#include "closest/subproblem.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "closest/errors.hpp"
#include "closest/instance_io.hpp"

namespace closest {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t instance_content_hash(const std::vector<std::string>& rows) {
  std::string joined;
  for (const auto& r : rows) {
    joined += r;
    joined += '\n';
  }
  return fnv1a64(joined);
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[v & 0xF];
    v >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

int parse_int(std::string_view s, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(std::string("bad integer for ") + what + ": '" + std::string(s) + "'");
  return value;
}

std::uint64_t parse_u64(std::string_view s, const char* what, int base = 10) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(std::string("bad number for ") + what + ": '" + std::string(s) + "'");
  return value;
}

std::string tie_break_text(const TieBreak& tb) {
  if (tb.kind == TieBreak::Kind::least_index) return "least-index";
  return "seeded-random:" + std::to_string(tb.seed);
}

TieBreak parse_tie_break(std::string_view s) {
  if (s == "least-index") return TieBreak::least_index();
  if (s.starts_with("seeded-random:"))
    return TieBreak::seeded(parse_u64(s.substr(14), "tie_break seed"));
  throw ParseError("unknown tie_break '" + std::string(s) + "'");
}

Mode parse_mode(std::string_view s) {
  if (s == "optimize") return Mode::optimize;
  if (s == "decide") return Mode::decide;
  if (s == "enumerate") return Mode::enumerate;
  throw ParseError("unknown mode '" + std::string(s) + "'");
}

Status parse_status(std::string_view s) {
  if (s == "solved") return Status::solved;
  if (s == "unsat") return Status::unsat;
  if (s == "timeout") return Status::timeout;
  if (s == "resource-limit") return Status::resource_limit;
  throw ParseError("unknown status '" + std::string(s) + "'");
}

Heuristic parse_heuristic(std::string_view s) {
  if (s == "pwm") return Heuristic::pwm;
  if (s == "sdf") return Heuristic::sdf;
  throw ParseError("unknown heuristic '" + std::string(s) + "'");
}

// Header lines followed by named sections, each section running to the next
// all-caps section name or end of input.
struct Document {
  std::map<std::string, std::string, std::less<>> headers;
  std::map<std::string, std::vector<std::string>, std::less<>> sections;
};

bool is_section_name(const std::string& line) {
  return line == "INSTANCE" || line == "DOMAINS" || line == "FRONTIER" ||
         line == "WITNESSES";
}

Document parse_document(std::string_view text) {
  Document doc;
  std::vector<std::string>* current = nullptr;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    start = end + 1;
    if (line.empty()) {
      if (start > text.size()) break;
      continue;
    }
    if (is_section_name(line)) {
      current = &doc.sections[line];
    } else if (current) {
      current->push_back(std::move(line));
    } else {
      const auto colon = line.find(':');
      if (colon == std::string::npos)
        throw ParseError("malformed header line '" + line + "'");
      std::string key = line.substr(0, colon);
      std::string value = line.substr(colon + 1);
      while (!value.empty() && value.front() == ' ') value.erase(value.begin());
      doc.headers[std::move(key)] = std::move(value);
    }
    if (start > text.size()) break;
  }
  return doc;
}

std::string_view require(const Document& doc, const char* key) {
  const auto it = doc.headers.find(key);
  if (it == doc.headers.end())
    throw ParseError(std::string("missing header '") + key + "'");
  return it->second;
}

}  // namespace

std::string serialize_subproblem(const Subproblem& sub) {
  std::string out;
  out += "version: " + std::to_string(sub.version) + "\n";
  out += "id: " + sub.id + "\n";
  out += "mode: " + std::string(to_string(sub.mode)) + "\n";
  out += "d_low: " + std::to_string(sub.bounds.low) + "\n";
  out += "d_high: " + std::to_string(sub.bounds.high) + "\n";
  if (sub.mode != Mode::optimize) out += "fixed_d: " + std::to_string(sub.fixed_d) + "\n";
  out += "heuristic: " + std::string(to_string(sub.heuristic)) + "\n";
  out += "tie_break: " + tie_break_text(sub.tie_break) + "\n";
  out += "root_sac: " + std::string(sub.root_sac ? "1" : "0") + "\n";
  out += "alphabet: " + sub.alphabet + "\n";
  out += "nodes: " + std::to_string(sub.nodes) + "\n";
  out += "instance_hash: " + hex64(sub.instance_hash) + "\n";
  if (!sub.inline_instance()) out += "instance_path: " + sub.instance_path + "\n";
  if (sub.inline_instance()) {
    out += "INSTANCE\n";
    for (const auto& row : sub.instance) out += row + "\n";
  }
  out += "DOMAINS\n";
  for (const auto& d : sub.domains) out += d + "\n";
  out += "FRONTIER\n";
  for (const auto& e : sub.frontier) {
    out += std::to_string(e.pos + 1);
    out += '=';
    out += e.value;
    out += " exhausted=" + e.exhausted + "\n";
  }
  return out;
}

Subproblem parse_subproblem(std::string_view text) {
  const Document doc = parse_document(text);

  Subproblem sub;
  sub.version = parse_int(require(doc, "version"), "version");
  if (sub.version != 1)
    throw ValidationError("unsupported subproblem version " + std::to_string(sub.version));
  sub.id = std::string(require(doc, "id"));
  sub.mode = parse_mode(require(doc, "mode"));
  sub.bounds.low = parse_int(require(doc, "d_low"), "d_low");
  sub.bounds.high = parse_int(require(doc, "d_high"), "d_high");
  if (sub.mode != Mode::optimize)
    sub.fixed_d = parse_int(require(doc, "fixed_d"), "fixed_d");
  sub.heuristic = parse_heuristic(require(doc, "heuristic"));
  sub.tie_break = parse_tie_break(require(doc, "tie_break"));
  if (const auto it = doc.headers.find("root_sac"); it != doc.headers.end())
    sub.root_sac = it->second == "1";
  sub.alphabet = std::string(require(doc, "alphabet"));
  if (const auto it = doc.headers.find("nodes"); it != doc.headers.end())
    sub.nodes = parse_u64(it->second, "nodes");
  sub.instance_hash = parse_u64(require(doc, "instance_hash"), "instance_hash", 16);
  if (const auto it = doc.headers.find("instance_path"); it != doc.headers.end())
    sub.instance_path = it->second;

  if (const auto it = doc.sections.find("INSTANCE"); it != doc.sections.end())
    sub.instance = it->second;
  const auto dom_it = doc.sections.find("DOMAINS");
  if (dom_it == doc.sections.end()) throw ParseError("missing DOMAINS section");
  sub.domains = dom_it->second;
  if (sub.domains.empty()) throw ParseError("empty DOMAINS section");

  if (sub.instance.empty() && sub.instance_path.empty())
    throw ParseError("subproblem has neither an inline instance nor an instance_path");

  const Alphabet alphabet(sub.alphabet);
  const int length = static_cast<int>(sub.domains.size());
  for (const auto& d : sub.domains) {
    if (d.empty()) throw ValidationError("empty domain line");
    for (char c : d)
      if (!alphabet.knows(c))
        throw ValidationError(std::string("domain symbol '") + c + "' outside alphabet");
  }

  if (sub.inline_instance()) {
    if (instance_content_hash(sub.instance) != sub.instance_hash)
      throw ValidationError("instance hash mismatch");
    for (const auto& row : sub.instance)
      if (static_cast<int>(row.size()) != length)
        throw ValidationError("instance row length does not match DOMAINS");
  }

  if (const auto it = doc.sections.find("FRONTIER"); it != doc.sections.end()) {
    for (const auto& line : it->second) {
      const auto eq = line.find('=');
      const auto sp = line.find(" exhausted=");
      if (eq == std::string::npos || sp == std::string::npos || eq > sp)
        throw ParseError("malformed frontier line '" + line + "'");
      Subproblem::FrontierLine e;
      e.pos = parse_int(std::string_view(line).substr(0, eq), "frontier position") - 1;
      const std::string value = line.substr(eq + 1, sp - eq - 1);
      if (value.size() != 1) throw ParseError("malformed frontier value in '" + line + "'");
      e.value = value[0];
      e.exhausted = line.substr(sp + 11);
      if (e.pos < 0 || e.pos >= length)
        throw ValidationError("frontier position " + std::to_string(e.pos + 1) +
                              " out of range");
      const auto& domain = sub.domains[e.pos];
      if (domain.find(e.value) == std::string::npos)
        throw ValidationError(std::string("frontier value '") + e.value +
                              "' outside the domain at position " + std::to_string(e.pos + 1));
      for (char c : e.exhausted)
        if (domain.find(c) == std::string::npos)
          throw ValidationError(std::string("exhausted symbol '") + c +
                                "' outside the domain at position " +
                                std::to_string(e.pos + 1));
      if (e.exhausted.find(e.value) != std::string::npos)
        throw ValidationError("frontier value listed as exhausted at position " +
                              std::to_string(e.pos + 1));
      sub.frontier.push_back(std::move(e));
    }
  }
  for (std::size_t i = 0; i < sub.frontier.size(); ++i)
    for (std::size_t j = i + 1; j < sub.frontier.size(); ++j)
      if (sub.frontier[i].pos == sub.frontier[j].pos)
        throw ValidationError("duplicate frontier position " +
                              std::to_string(sub.frontier[i].pos + 1));
  return sub;
}

ResolvedSubproblem resolve_subproblem(const Subproblem& sub, const InstanceLoader& loader) {
  std::vector<std::string> rows = sub.instance;
  if (rows.empty()) {
    std::string text;
    if (loader) {
      text = loader(sub.instance_path);
    } else {
      std::ifstream in(sub.instance_path, std::ios::binary);
      if (!in) throw ValidationError("cannot open instance file " + sub.instance_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    rows = parse_instance(text).strings;
    if (instance_content_hash(rows) != sub.instance_hash)
      throw ValidationError("instance hash mismatch for " + sub.instance_path);
  }

  const Alphabet alphabet(sub.alphabet);
  StringSet strings = encode_strings(rows, alphabet);
  if (static_cast<int>(sub.domains.size()) != strings.length())
    throw ValidationError("DOMAINS count does not match instance length");

  Model model{.strings = std::move(strings),
              .domains = {},
              .bounds = sub.bounds,
              .mode = sub.mode,
              .fixed_d = sub.fixed_d,
              .heuristic = sub.heuristic,
              .tie_break = sub.tie_break,
              .root_sac = sub.root_sac};
  model.domains.reserve(sub.domains.size());
  for (const auto& d : sub.domains) model.domains.push_back(alphabet.set_of(d));

  SearchState state;
  state.nodes = sub.nodes;
  state.path.reserve(sub.frontier.size());
  for (const auto& e : sub.frontier) {
    FrontierEntry fe;
    fe.pos = e.pos;
    fe.value = alphabet.encode(e.value);
    fe.exhausted = alphabet.set_of(e.exhausted);
    state.path.push_back(fe);
  }

  const int cap = sub.mode == Mode::optimize ? sub.bounds.high - 1 : sub.fixed_d;
  return {std::move(model), std::move(state), cap};
}

Subproblem make_root_subproblem(std::string id, const StringSet& strings, Mode mode,
                                DomainMode domain_mode, int fixed_d,
                                Heuristic heuristic, TieBreak tie_break, bool root_sac) {
  const Model model =
      build_model(strings, mode, heuristic, domain_mode, fixed_d, tie_break, root_sac);
  Subproblem sub;
  sub.id = std::move(id);
  sub.mode = mode;
  sub.bounds = mode == Mode::optimize
                   ? BoundInterval{model.bounds.low, model.bounds.high + 1}
                   : model.bounds;
  // optimize units search strictly below d_high; a fresh instance has no
  // incumbent yet, so the initial cap is the diameter itself.
  sub.fixed_d = fixed_d;
  sub.heuristic = heuristic;
  sub.tie_break = tie_break;
  sub.root_sac = root_sac;
  sub.alphabet = strings.alphabet().symbols();
  for (int i = 0; i < strings.count(); ++i) sub.instance.push_back(strings.decode_row(i));
  sub.instance_hash = instance_content_hash(sub.instance);
  for (const auto& d : model.domains)
    sub.domains.push_back(strings.alphabet().chars_of(d));
  return sub;
}

Subproblem advance_subproblem(const Subproblem& sub, const SearchState& state,
                              BoundInterval new_bounds) {
  Subproblem out = sub;
  out.bounds = new_bounds;
  out.nodes = state.nodes;
  out.frontier.clear();
  const Alphabet alphabet(sub.alphabet);
  for (const auto& e : state.path) {
    Subproblem::FrontierLine line;
    line.pos = e.pos;
    line.value = alphabet.decode(e.value);
    line.exhausted = alphabet.chars_of(e.exhausted);
    out.frontier.push_back(std::move(line));
  }
  return out;
}

ResultDoc make_result(const Subproblem& sub, Status status, std::optional<int> best_d,
                      std::uint64_t node_count, std::vector<std::string> witnesses) {
  ResultDoc doc;
  doc.id = sub.id;
  doc.mode = sub.mode;
  doc.bounds = sub.bounds;
  doc.fixed_d = sub.fixed_d;
  doc.heuristic = sub.heuristic;
  doc.tie_break = sub.tie_break;
  doc.root_sac = sub.root_sac;
  doc.alphabet = sub.alphabet;
  doc.instance_hash = sub.instance_hash;
  doc.status = status;
  doc.best_d = best_d;
  doc.node_count = node_count;
  doc.witnesses = std::move(witnesses);
  return doc;
}

std::string serialize_result(const ResultDoc& doc) {
  std::string out;
  out += "version: " + std::to_string(doc.version) + "\n";
  out += "id: " + doc.id + "\n";
  out += "mode: " + std::string(to_string(doc.mode)) + "\n";
  out += "d_low: " + std::to_string(doc.bounds.low) + "\n";
  out += "d_high: " + std::to_string(doc.bounds.high) + "\n";
  if (doc.mode != Mode::optimize) out += "fixed_d: " + std::to_string(doc.fixed_d) + "\n";
  out += "heuristic: " + std::string(to_string(doc.heuristic)) + "\n";
  out += "tie_break: " + tie_break_text(doc.tie_break) + "\n";
  out += "root_sac: " + std::string(doc.root_sac ? "1" : "0") + "\n";
  out += "alphabet: " + doc.alphabet + "\n";
  out += "instance_hash: " + hex64(doc.instance_hash) + "\n";
  out += "status: " + std::string(to_string(doc.status)) + "\n";
  out += "best_d: " + (doc.best_d ? std::to_string(*doc.best_d) : std::string("-")) + "\n";
  out += "witness_count: " + std::to_string(doc.witnesses.size()) + "\n";
  out += "node_count: " + std::to_string(doc.node_count) + "\n";
  out += "WITNESSES\n";
  for (const auto& w : doc.witnesses) out += w + "\n";
  return out;
}

ResultDoc parse_result(std::string_view text) {
  const Document parsed = parse_document(text);
  ResultDoc doc;
  doc.version = parse_int(require(parsed, "version"), "version");
  if (doc.version != 1)
    throw ValidationError("unsupported result version " + std::to_string(doc.version));
  doc.id = std::string(require(parsed, "id"));
  doc.mode = parse_mode(require(parsed, "mode"));
  doc.bounds.low = parse_int(require(parsed, "d_low"), "d_low");
  doc.bounds.high = parse_int(require(parsed, "d_high"), "d_high");
  if (doc.mode != Mode::optimize)
    doc.fixed_d = parse_int(require(parsed, "fixed_d"), "fixed_d");
  doc.heuristic = parse_heuristic(require(parsed, "heuristic"));
  doc.tie_break = parse_tie_break(require(parsed, "tie_break"));
  if (const auto it = parsed.headers.find("root_sac"); it != parsed.headers.end())
    doc.root_sac = it->second == "1";
  doc.alphabet = std::string(require(parsed, "alphabet"));
  doc.instance_hash = parse_u64(require(parsed, "instance_hash"), "instance_hash", 16);
  doc.status = parse_status(require(parsed, "status"));
  const auto best = require(parsed, "best_d");
  if (best != "-") doc.best_d = parse_int(best, "best_d");
  doc.node_count = parse_u64(require(parsed, "node_count"), "node_count");
  if (const auto it = parsed.sections.find("WITNESSES"); it != parsed.sections.end())
    doc.witnesses = it->second;
  const auto count = parse_u64(require(parsed, "witness_count"), "witness_count");
  if (count != doc.witnesses.size())
    throw ValidationError("witness_count does not match WITNESSES section");
  return doc;
}

}  // namespace closest
