#pragma once

#include <stdexcept>
#include <string>

namespace obslab {

// Raised when an operation's precondition on its arguments is breached:
// out-of-range vertices, non-edges where an edge is required, malformed input.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an exhaustive search is asked to run above its vertex guard.
class ScaleLimit : public std::runtime_error {
 public:
  ScaleLimit(const std::string& what, int vertices, int guard)
      : std::runtime_error(what + ": " + std::to_string(vertices) +
                           " vertices exceeds guard " + std::to_string(guard)),
        vertices_(vertices),
        guard_(guard) {}

  int vertices() const noexcept { return vertices_; }
  int guard() const noexcept { return guard_; }

 private:
  int vertices_;
  int guard_;
};

}  // namespace obslab
