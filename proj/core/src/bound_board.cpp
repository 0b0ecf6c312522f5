#include "closest/bound_board.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "closest/errors.hpp"

namespace closest {

namespace {

std::int64_t unix_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

}  // namespace

BoundBoard::BoundBoard(std::filesystem::path file) : file_(std::move(file)) {
  std::filesystem::create_directories(file_.parent_path());
}

void BoundBoard::append(const std::string& line) const {
  // One buffered write per post; O_APPEND keeps concurrent small appends whole.
  std::ofstream out(file_, std::ios::app | std::ios::binary);
  out << line;
  out.flush();
  if (!out) throw std::runtime_error("cannot append to bounds file " + file_.string());
}

void BoundBoard::post_low(int d) const {
  append("LOW " + std::to_string(d) + " " + std::to_string(unix_ms()) + "\n");
}

void BoundBoard::post_high(int d, std::string_view witness) const {
  append("HIGH " + std::to_string(d) + " " + std::string(witness) + " " +
         std::to_string(unix_ms()) + "\n");
}

BoundBoard::Snapshot BoundBoard::read() const {
  Snapshot snap;
  std::ifstream in(file_, std::ios::binary);
  if (!in) return snap;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "LOW") {
      int d;
      if (fields >> d)
        if (!snap.low || d > *snap.low) snap.low = d;
    } else if (tag == "HIGH") {
      int d;
      std::string witness;
      if (fields >> d >> witness)
        if (!snap.high || d < *snap.high) {
          snap.high = d;
          snap.witness = witness;
        }
    }
  }
  return snap;
}

std::vector<std::pair<std::int64_t, int>> BoundBoard::high_history() const {
  std::vector<std::pair<std::int64_t, int>> history;
  std::ifstream in(file_, std::ios::binary);
  if (!in) return history;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string tag, witness;
    int d;
    std::int64_t ts;
    if (fields >> tag && tag == "HIGH" && fields >> d >> witness >> ts)
      history.emplace_back(ts, d);
  }
  return history;
}

}  // namespace closest
