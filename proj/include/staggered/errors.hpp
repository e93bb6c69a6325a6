#pragma once

#include <stdexcept>
#include <string>

namespace staggered {

/// Precondition violated by a caller-supplied argument (degree, index, range).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-physical thermodynamic state (non-positive density or pressure, NaN).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Initial data that cannot be projected (non-positive density or pressure).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loss of positivity inside the scheme: correction weights, element densities.
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Riemann data that generates a vacuum region.
class VacuumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solve (star pressure, characteristic feet) did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Run produced non-finite or exploding values.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, long step, double time)
      : std::runtime_error(what), step_(step), time_(time) {}
  long step() const { return step_; }
  double time() const { return time_; }

 private:
  long step_;
  double time_;
};

/// Positivity could not be restored by halving the time step.
class PositivityAbort : public PositivityError {
 public:
  PositivityAbort(const std::string& what, long step, double time)
      : PositivityError(what), step_(step), time_(time) {}
  long step() const { return step_; }
  double time() const { return time_; }

 private:
  long step_;
  double time_;
};

/// Malformed configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace staggered
