#ifndef GEOTHRESH_ERRORS_HPP
#define GEOTHRESH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace geothresh {

/// Requested computation has no meaning for the given input
/// (too few points, point outside the domain, critical regime, ...).
class InfeasibleError : public std::invalid_argument {
 public:
  explicit InfeasibleError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical solver could not meet its contract (no bracket, no convergence).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace geothresh

#endif  // GEOTHRESH_ERRORS_HPP
