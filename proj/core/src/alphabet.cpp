#include "closest/alphabet.hpp"

namespace closest {

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
  if (symbols_.size() < 2)
    throw std::invalid_argument("alphabet needs at least 2 symbols");
  if (symbols_.size() > SymbolSet::max_symbols)
    throw std::invalid_argument("alphabet larger than " +
                                std::to_string(SymbolSet::max_symbols) + " symbols");
  index_.fill(-1);
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto c = static_cast<unsigned char>(symbols_[i]);
    if (index_[c] >= 0)
      throw std::invalid_argument(std::string("duplicate symbol in alphabet: '") +
                                  symbols_[i] + "'");
    index_[c] = static_cast<int>(i);
  }
}

const Alphabet& Alphabet::dna() {
  static const Alphabet a("ACGT");
  return a;
}

SymbolSet Alphabet::set_of(std::string_view chars) const {
  SymbolSet s;
  for (char c : chars) s.add(encode(c));
  return s;
}

std::string Alphabet::chars_of(SymbolSet set) const {
  std::string out;
  for (std::uint8_t code = 1; code <= size(); ++code)
    if (set.contains(code)) out.push_back(decode(code));
  return out;
}

}  // namespace closest
