#include "closest/instance_io.hpp"

#include <cctype>
#include <random>
#include <sstream>

#include "closest/errors.hpp"

namespace closest {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

void check_lengths(const std::vector<std::string>& strings) {
  if (strings.empty()) throw ParseError("no strings in instance");
  for (const auto& s : strings) {
    if (s.empty()) throw ParseError("zero-length string in instance");
    if (s.size() != strings.front().size())
      throw ParseError("strings have unequal lengths (" +
                       std::to_string(strings.front().size()) + " vs " +
                       std::to_string(s.size()) + ")");
  }
}

}  // namespace

InstanceDoc parse_instance(std::string_view text, std::optional<InstanceFormat> hint) {
  InstanceFormat format = InstanceFormat::plain;
  if (hint) {
    format = *hint;
  } else {
    for (char c : text) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
      format = c == '>' ? InstanceFormat::fasta : InstanceFormat::plain;
      break;
    }
  }

  InstanceDoc doc;
  doc.format = format;
  if (format == InstanceFormat::plain) {
    for (auto& line : split_lines(text)) {
      if (line.empty() || line[0] == '#') continue;
      doc.strings.push_back(upper(std::move(line)));
    }
  } else {
    bool in_record = false;
    for (auto& line : split_lines(text)) {
      if (line.empty()) continue;
      if (line[0] == '>') {
        doc.names.push_back(line.substr(1));
        doc.strings.emplace_back();
        in_record = true;
      } else {
        if (!in_record) throw ParseError("FASTA sequence data before the first '>' header");
        doc.strings.back() += upper(std::move(line));
      }
    }
  }
  check_lengths(doc.strings);
  return doc;
}

std::string format_instance(const InstanceDoc& doc, InstanceFormat format) {
  std::string out;
  if (format == InstanceFormat::plain) {
    for (const auto& s : doc.strings) {
      out += s;
      out += '\n';
    }
  } else {
    for (std::size_t i = 0; i < doc.strings.size(); ++i) {
      out += '>';
      out += i < doc.names.size() ? doc.names[i] : "s" + std::to_string(i + 1);
      out += '\n';
      out += doc.strings[i];
      out += '\n';
    }
  }
  return out;
}

StringSet load_string_set(std::string_view text, const Alphabet& alphabet,
                          std::optional<InstanceFormat> hint) {
  return encode_strings(parse_instance(text, hint).strings, alphabet);
}

InstanceDoc generate_instance(int n, int length, const Alphabet& alphabet,
                              std::uint64_t seed) {
  if (n < 1 || length < 1)
    throw std::invalid_argument("instance needs n >= 1 and length >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, alphabet.size() - 1);
  InstanceDoc doc;
  doc.strings.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::string s(length, '?');
    for (char& c : s) c = alphabet.symbols()[pick(rng)];
    doc.strings.push_back(std::move(s));
  }
  return doc;
}

namespace {

std::string csv_field(std::string_view value) {
  const bool needs_quotes = value.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string format_ms(double ms) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << ms;
  return os.str();
}

}  // namespace

std::string write_bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "instance_id,n,l,seed,heuristic,mode,best_d,nodes,wall_ms,incumbents\n";
  for (const auto& row : rows) {
    std::string incumbents;
    for (const auto& [ms, d] : row.incumbents) {
      if (!incumbents.empty()) incumbents += ';';
      incumbents += format_ms(ms) + ":" + std::to_string(d);
    }
    out += csv_field(row.instance_id);
    out += ',' + std::to_string(row.n);
    out += ',' + std::to_string(row.length);
    out += ',' + std::to_string(row.seed);
    out += ',' + csv_field(row.heuristic);
    out += ',' + csv_field(row.mode);
    out += ',' + std::to_string(row.best_d);
    out += ',' + std::to_string(row.nodes);
    out += ',' + format_ms(row.wall_ms);
    out += ',' + csv_field(incumbents);
    out += '\n';
  }
  return out;
}

}  // namespace closest
