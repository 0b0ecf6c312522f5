#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "closest/subproblem.hpp"

namespace closest {

/// Directory-backed FIFO of subproblem files. Workers claim a unit by
/// atomically renaming it from pending/ to running/; crashes leave the file
/// in running/ for requeue_stale to recover. Result files are write-once.
///
/// Layout under the queue directory:
///   pending/<seq>_<id>.sub   enqueued units, FIFO by zero-padded sequence
///   running/<seq>_<id>.sub   claimed units, rewritten in place at checkpoints
///   results/<id>.result      one terminal result per unit
///   results/<id>.partial     witnesses persisted at checkpoints
///   bounds.log               the BoundBoard file
///   halt                     stop flag: answer found, drop all work
class WorkQueue {
 public:
  explicit WorkQueue(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path bounds_file() const { return dir_ / "bounds.log"; }

  std::string enqueue(const Subproblem& sub);

  struct Claim {
    std::string name;
    Subproblem sub;
  };
  std::optional<Claim> claim_next();

  /// Atomically rewrites a claimed unit with an advanced frontier.
  void checkpoint(const std::string& name, const Subproblem& sub);

  /// Removes a claimed unit once its result (or children) are durable.
  void finish(const std::string& name);

  /// Sidelines a claimed unit that cannot be run (corrupt frontier etc.).
  void reject(const std::string& name);

  /// First writer wins; later attempts for the same id are ignored.
  void write_result(const ResultDoc& doc);
  bool has_result(const std::string& id) const;
  std::optional<ResultDoc> read_result(const std::string& id) const;

  void append_partial_witnesses(const std::string& id, std::span<const std::string> witnesses);
  std::vector<std::string> read_partial_witnesses(const std::string& id) const;

  /// Moves running units whose file has not been touched for max_age back to
  /// pending/, preserving their sequence position. Returns how many moved.
  int requeue_stale(std::chrono::milliseconds max_age);

  std::vector<std::string> pending_names() const;
  std::vector<std::string> running_names() const;
  std::vector<std::string> result_ids() const;

  /// id of the unit stored under a queue file name ("<seq>_<id>.sub").
  static std::string id_of(const std::string& name);
  /// Front tag: the id up to its first '.', so split children stay grouped.
  static std::string front_of(const std::string& id);

  void post_halt() const;
  bool halted() const;

 private:
  std::uint64_t next_seq();

  std::filesystem::path dir_;
};

}  // namespace closest
