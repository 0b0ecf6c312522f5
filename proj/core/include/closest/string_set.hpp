#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "closest/alphabet.hpp"

namespace closest {

/// N equal-length strings over one alphabet, integer-encoded row-major.
class StringSet {
 public:
  StringSet(Alphabet alphabet, std::size_t count, std::size_t length,
            std::vector<std::uint8_t> cells);

  const Alphabet& alphabet() const { return alphabet_; }
  int count() const { return static_cast<int>(count_); }
  int length() const { return static_cast<int>(length_); }

  std::span<const std::uint8_t> row(int i) const {
    return {cells_.data() + static_cast<std::size_t>(i) * length_, length_};
  }
  std::uint8_t at(int i, int pos) const {
    return cells_[static_cast<std::size_t>(i) * length_ + pos];
  }

  std::string decode_row(int i) const;

 private:
  Alphabet alphabet_;
  std::size_t count_;
  std::size_t length_;
  std::vector<std::uint8_t> cells_;
};

/// Encodes raw character strings, preserving row order. Throws
/// std::invalid_argument on empty input, unequal lengths, zero-length rows,
/// or characters outside the alphabet.
StringSet encode_strings(const std::vector<std::string>& raw, const Alphabet& alphabet);

/// Decodes a row of symbol codes back to characters.
std::string decode_row(std::span<const std::uint8_t> row, const Alphabet& alphabet);

/// Encodes one character string to symbol codes.
std::vector<std::uint8_t> encode_row(std::string_view raw, const Alphabet& alphabet);

}  // namespace closest
