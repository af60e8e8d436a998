#pragma once

#include <chrono>
#include <stdexcept>
#include <string>

namespace asck {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct CapExceeded : Error {
  long explored;
  std::string which;
  CapExceeded(std::string cap, long n)
      : Error("cap exceeded: " + cap + " (explored " + std::to_string(n) + ")"),
        explored(n),
        which(std::move(cap)) {}
};

// Resource limits threaded through the long-running searches.
// size_max bounds closure enumeration (number of elements),
// rank_max bounds free-algebra ranks, time_budget_ms == 0 means unlimited.
// Note: a nonzero time budget makes the complete/inconclusive boundary
// depend on the machine; size caps are the deterministic mechanism.
struct Caps {
  int rank_max = 2;
  long size_max = 20000;
  long time_budget_ms = 0;
};

// Operation tables are materialized only up to this carrier size; larger
// algebras stay in tuple-backed form and are evaluated on demand.
constexpr long kDenseTableMax = 2048;

// Default carrier bound for full congruence-lattice computation.
constexpr long kCongruenceSizeMax = 4096;

enum class Tri { Yes, No, Unknown };

inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "YES";
    case Tri::No: return "NO";
    default: return "INCONCLUSIVE";
  }
}

class Deadline {
 public:
  Deadline() = default;
  static Deadline after_ms(long ms) {
    Deadline d;
    if (ms > 0) {
      d.active_ = true;
      d.end_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    }
    return d;
  }
  bool expired() const {
    return active_ && std::chrono::steady_clock::now() > end_;
  }

 private:
  std::chrono::steady_clock::time_point end_{};
  bool active_ = false;
};

}  // namespace asck
