#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace closest {

/// Set of symbol codes, stored as a bitmask. Codes are 1-based, so code c
/// occupies bit c-1. Supports alphabets of up to 32 symbols.
struct SymbolSet {
  std::uint32_t bits = 0;

  static constexpr int max_symbols = 32;

  static constexpr SymbolSet full(int count) {
    return {count >= max_symbols ? ~std::uint32_t{0}
                                 : (std::uint32_t{1} << count) - 1};
  }

  constexpr bool contains(std::uint8_t code) const {
    return (bits >> (code - 1)) & 1u;
  }
  constexpr void add(std::uint8_t code) { bits |= std::uint32_t{1} << (code - 1); }
  constexpr void remove(std::uint8_t code) { bits &= ~(std::uint32_t{1} << (code - 1)); }
  constexpr int size() const { return std::popcount(bits); }
  constexpr bool empty() const { return bits == 0; }
  constexpr bool is_subset_of(SymbolSet other) const { return (bits & ~other.bits) == 0; }
  constexpr SymbolSet operator&(SymbolSet o) const { return {bits & o.bits}; }
  constexpr SymbolSet operator|(SymbolSet o) const { return {bits | o.bits}; }

  /// Lowest code in the set; undefined on an empty set.
  constexpr std::uint8_t first() const {
    return static_cast<std::uint8_t>(std::countr_zero(bits) + 1);
  }

  friend constexpr bool operator==(SymbolSet, SymbolSet) = default;
};

/// Ordered, distinct symbol characters. Characters are encoded as the integer
/// codes 1..size() in symbol order; the default DNA alphabet maps A,C,G,T to
/// 1,2,3,4.
class Alphabet {
 public:
  explicit Alphabet(std::string symbols);

  static const Alphabet& dna();

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& symbols() const { return symbols_; }

  bool knows(char c) const { return index_[static_cast<unsigned char>(c)] >= 0; }

  std::uint8_t encode(char c) const {
    const int i = index_[static_cast<unsigned char>(c)];
    if (i < 0) throw std::invalid_argument(std::string("symbol not in alphabet: '") + c + "'");
    return static_cast<std::uint8_t>(i + 1);
  }

  char decode(std::uint8_t code) const {
    if (code < 1 || code > symbols_.size())
      throw std::invalid_argument("symbol code out of range: " + std::to_string(code));
    return symbols_[code - 1];
  }

  SymbolSet full_set() const { return SymbolSet::full(size()); }

  /// Mask for a string of symbol characters, e.g. "AT" -> {A,T}.
  SymbolSet set_of(std::string_view chars) const;
  /// Characters of a mask in alphabet order, e.g. {A,T} -> "AT".
  std::string chars_of(SymbolSet set) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::string symbols_;
  std::array<int, 256> index_;
};

}  // namespace closest
