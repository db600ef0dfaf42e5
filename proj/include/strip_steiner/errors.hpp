#pragma once

#include <stdexcept>
#include <string>

namespace strip_steiner {

struct CoordOverflow : std::runtime_error {
  explicit CoordOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfStrip : std::runtime_error {
  explicit OutOfStrip(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::runtime_error {
  explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct IndexOutOfRange : std::out_of_range {
  explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct TooManyTerminals : std::runtime_error {
  explicit TooManyTerminals(const std::string& what) : std::runtime_error(what) {}
};

struct TooManyEdges : std::runtime_error {
  explicit TooManyEdges(const std::string& what) : std::runtime_error(what) {}
};

struct DisconnectedGrid : std::runtime_error {
  explicit DisconnectedGrid(const std::string& what) : std::runtime_error(what) {}
};

struct NoSolution : std::runtime_error {
  explicit NoSolution(const std::string& what) : std::runtime_error(what) {}
};

struct MissingSparsenessK : std::runtime_error {
  explicit MissingSparsenessK(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidProbe : std::invalid_argument {
  explicit InvalidProbe(const std::string& what) : std::invalid_argument(what) {}
};

// An interval between hard walls is too big for the exact subproblem solver.
// Carries the interval bounds so the caller can fall back to another solver.
struct SubproblemTooLarge : std::runtime_error {
  SubproblemTooLarge(const std::string& what, std::size_t first, std::size_t last)
      : std::runtime_error(what), first_index(first), last_index(last) {}
  std::size_t first_index;
  std::size_t last_index;
};

}  // namespace strip_steiner
