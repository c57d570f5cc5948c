#ifndef SKEWDRY_ERRORS_HPP
#define SKEWDRY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skewdry {

// Invalid parameter or argument outside the operation's domain.
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// An iterative scheme hit its subdivision/refinement limit before reaching
// the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Cancellation blow-up or an ill-conditioned intermediate; indicates a bug
// or an input far outside the supported regime.
class NumericalInstability : public std::runtime_error {
public:
  explicit NumericalInstability(const std::string& msg) : std::runtime_error(msg) {}
};

// A user-supplied evaluator failed.
class EvaluationError : public std::runtime_error {
public:
  explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested computation would exceed the configured memory cap.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace skewdry

#endif
