#pragma once

#include <stdexcept>
#include <string>

namespace likednet {

// Thrown by text loaders; carries the 1-based offending line.
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

// Thrown when an iterative solve fails to meet its tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double residual, long iterations)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + " after " +
                             std::to_string(iterations) + " iterations)"),
          residual_(residual),
          iterations_(iterations) {}
    double residual() const { return residual_; }
    long iterations() const { return iterations_; }

  private:
    double residual_;
    long iterations_;
};

}  // namespace likednet
