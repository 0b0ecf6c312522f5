#include "closest/string_set.hpp"

#include <stdexcept>

namespace closest {

StringSet::StringSet(Alphabet alphabet, std::size_t count, std::size_t length,
                     std::vector<std::uint8_t> cells)
    : alphabet_(std::move(alphabet)), count_(count), length_(length), cells_(std::move(cells)) {
  if (count_ < 1) throw std::invalid_argument("string set needs at least one string");
  if (length_ < 1) throw std::invalid_argument("strings must have length >= 1");
  if (cells_.size() != count_ * length_)
    throw std::invalid_argument("cell buffer does not match count x length");
  for (std::uint8_t c : cells_)
    if (c < 1 || c > alphabet_.size())
      throw std::invalid_argument("cell holds invalid symbol code " + std::to_string(c));
}

std::string StringSet::decode_row(int i) const {
  return ::closest::decode_row(row(i), alphabet_);
}

StringSet encode_strings(const std::vector<std::string>& raw, const Alphabet& alphabet) {
  if (raw.empty()) throw std::invalid_argument("no input strings");
  const std::size_t length = raw.front().size();
  if (length == 0) throw std::invalid_argument("strings must have length >= 1");
  std::vector<std::uint8_t> cells;
  cells.reserve(raw.size() * length);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != length)
      throw std::invalid_argument("string " + std::to_string(i + 1) + " has length " +
                                  std::to_string(raw[i].size()) + ", expected " +
                                  std::to_string(length));
    for (char c : raw[i]) cells.push_back(alphabet.encode(c));
  }
  return StringSet(alphabet, raw.size(), length, std::move(cells));
}

std::string decode_row(std::span<const std::uint8_t> row, const Alphabet& alphabet) {
  std::string out;
  out.reserve(row.size());
  for (std::uint8_t c : row) out.push_back(alphabet.decode(c));
  return out;
}

std::vector<std::uint8_t> encode_row(std::string_view raw, const Alphabet& alphabet) {
  std::vector<std::uint8_t> out;
  out.reserve(raw.size());
  for (char c : raw) out.push_back(alphabet.encode(c));
  return out;
}

}  // namespace closest
