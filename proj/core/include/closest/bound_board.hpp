#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace closest {

/// Shared monotone bounds, kept as an append-only file so that any number of
/// processes can post and poll without coordination. Lines are
/// "LOW <d> <unix_ms>" and "HIGH <d> <witness> <unix_ms>"; readers take the
/// highest LOW and the lowest HIGH.
class BoundBoard {
 public:
  explicit BoundBoard(std::filesystem::path file);

  void post_low(int d) const;
  void post_high(int d, std::string_view witness) const;

  struct Snapshot {
    std::optional<int> low;
    std::optional<int> high;
    std::string witness;  // achieves high
  };
  Snapshot read() const;

  /// All HIGH posts in file order, as (unix_ms, d) pairs; the incumbent trace
  /// of a distributed run.
  std::vector<std::pair<std::int64_t, int>> high_history() const;

  const std::filesystem::path& file() const { return file_; }

 private:
  void append(const std::string& line) const;

  std::filesystem::path file_;
};

}  // namespace closest
