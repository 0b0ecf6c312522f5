#include "closest/work_queue.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "closest/errors.hpp"

namespace closest {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const fs::path& target, const std::string& content) {
  const fs::path tmp = target.parent_path() /
                       (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::vector<std::string> sorted_names(const fs::path& dir) {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.ends_with(".sub")) names.push_back(name);
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

WorkQueue::WorkQueue(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_ / "pending");
  fs::create_directories(dir_ / "running");
  fs::create_directories(dir_ / "results");
}

std::uint64_t WorkQueue::next_seq() {
  // flock-guarded counter file gives a process-wide creation sequence.
  const fs::path seq_path = dir_ / "seq";
  const int fd = ::open(seq_path.c_str(), O_RDWR | O_CREAT, 0644);
  if (fd < 0) throw std::runtime_error("cannot open " + seq_path.string());
  ::flock(fd, LOCK_EX);
  char buf[32] = {0};
  const ssize_t got = ::pread(fd, buf, sizeof(buf) - 1, 0);
  std::uint64_t seq = got > 0 ? std::strtoull(buf, nullptr, 10) : 0;
  ++seq;
  const std::string next = std::to_string(seq);
  if (::pwrite(fd, next.c_str(), next.size(), 0) < 0 ||
      ::ftruncate(fd, static_cast<off_t>(next.size())) < 0) {
    ::flock(fd, LOCK_UN);
    ::close(fd);
    throw std::runtime_error("cannot update " + seq_path.string());
  }
  ::flock(fd, LOCK_UN);
  ::close(fd);
  return seq;
}

std::string WorkQueue::enqueue(const Subproblem& sub) {
  char prefix[16];
  std::snprintf(prefix, sizeof(prefix), "%010llu",
                static_cast<unsigned long long>(next_seq()));
  const std::string name = std::string(prefix) + "_" + sub.id + ".sub";
  write_file_atomic(dir_ / "pending" / name, serialize_subproblem(sub));
  return name;
}

std::optional<WorkQueue::Claim> WorkQueue::claim_next() {
  for (const auto& name : sorted_names(dir_ / "pending")) {
    std::error_code ec;
    fs::rename(dir_ / "pending" / name, dir_ / "running" / name, ec);
    if (ec) continue;  // another worker won the rename
    try {
      return Claim{name, parse_subproblem(read_file(dir_ / "running" / name))};
    } catch (const std::exception& e) {
      // Quarantine garbage instead of spinning on it.
      std::fprintf(stderr, "queue: rejecting %s: %s\n", name.c_str(), e.what());
      fs::rename(dir_ / "running" / name, dir_ / "running" / (name + ".rejected"), ec);
    }
  }
  return std::nullopt;
}

void WorkQueue::checkpoint(const std::string& name, const Subproblem& sub) {
  write_file_atomic(dir_ / "running" / name, serialize_subproblem(sub));
}

void WorkQueue::finish(const std::string& name) {
  std::error_code ec;
  fs::remove(dir_ / "running" / name, ec);
}

void WorkQueue::reject(const std::string& name) {
  std::error_code ec;
  fs::rename(dir_ / "running" / name, dir_ / "running" / (name + ".rejected"), ec);
}

void WorkQueue::write_result(const ResultDoc& doc) {
  const fs::path target = dir_ / "results" / (doc.id + ".result");
  if (fs::exists(target)) return;
  const fs::path tmp = dir_ / "results" /
                       (doc.id + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << serialize_result(doc);
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  // link() refuses to clobber, so exactly one result survives per id.
  if (::link(tmp.c_str(), target.c_str()) != 0 && errno != EEXIST) {
    ::unlink(tmp.c_str());
    throw std::runtime_error("cannot publish " + target.string());
  }
  ::unlink(tmp.c_str());
}

bool WorkQueue::has_result(const std::string& id) const {
  return fs::exists(dir_ / "results" / (id + ".result"));
}

std::optional<ResultDoc> WorkQueue::read_result(const std::string& id) const {
  const fs::path p = dir_ / "results" / (id + ".result");
  if (!fs::exists(p)) return std::nullopt;
  return parse_result(read_file(p));
}

void WorkQueue::append_partial_witnesses(const std::string& id,
                                         std::span<const std::string> witnesses) {
  if (witnesses.empty()) return;
  std::string block;
  for (const auto& w : witnesses) block += w + "\n";
  std::ofstream out(dir_ / "results" / (id + ".partial"), std::ios::app | std::ios::binary);
  out << block;
  out.flush();
}

std::vector<std::string> WorkQueue::read_partial_witnesses(const std::string& id) const {
  std::vector<std::string> out;
  std::ifstream in(dir_ / "results" / (id + ".partial"), std::ios::binary);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

int WorkQueue::requeue_stale(std::chrono::milliseconds max_age) {
  int moved = 0;
  const auto now = std::chrono::file_clock::now();
  for (const auto& name : sorted_names(dir_ / "running")) {
    std::error_code ec;
    const auto mtime = fs::last_write_time(dir_ / "running" / name, ec);
    if (ec) continue;
    if (now - mtime < max_age) continue;
    fs::rename(dir_ / "running" / name, dir_ / "pending" / name, ec);
    if (!ec) ++moved;
  }
  return moved;
}

std::vector<std::string> WorkQueue::pending_names() const {
  return sorted_names(dir_ / "pending");
}

std::vector<std::string> WorkQueue::running_names() const {
  return sorted_names(dir_ / "running");
}

std::vector<std::string> WorkQueue::result_ids() const {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir_ / "results", ec)) {
    std::string name = entry.path().filename().string();
    if (name.ends_with(".result"))
      ids.push_back(name.substr(0, name.size() - 7));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string WorkQueue::id_of(const std::string& name) {
  const auto underscore = name.find('_');
  std::string id = name.substr(underscore + 1);
  if (id.ends_with(".sub")) id.resize(id.size() - 4);
  return id;
}

std::string WorkQueue::front_of(const std::string& id) {
  return id.substr(0, id.find('.'));
}

void WorkQueue::post_halt() const {
  write_file_atomic(dir_ / "halt", "halt\n");
}

bool WorkQueue::halted() const { return fs::exists(dir_ / "halt"); }

}  // namespace closest
