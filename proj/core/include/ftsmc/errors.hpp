#pragma once

#include <stdexcept>
#include <string>

namespace ftsmc {

// Base class for all toolkit errors so callers can catch the whole family.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (t < 0, |y| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// State outside the prescribed envelope: the transformation is undefined there.
class InfeasibilityError : public Error {
 public:
  using Error::Error;
};

// Root-finder bracket does not contain a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

// Iteration budget exhausted before reaching tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Gain settings violate a feasibility inequality required by a closed form.
class InfeasibleGainError : public Error {
 public:
  using Error::Error;
};

// Operation requires a nonempty trajectory.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Scenario file problem; carries the offending key and 1-based line when known.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::string key = {}, int line = 0)
      : Error(message), key_(std::move(key)), line_(line) {}
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

// Two scenarios that must agree (horizon, dt, plant, disturbance) do not.
class ConfigMismatchError : public Error {
 public:
  using Error::Error;
};

// Simulation state became non-finite; carries the last time the state was valid.
class NumericDivergenceError : public Error {
 public:
  NumericDivergenceError(const std::string& message, double last_valid_time)
      : Error(message), last_valid_time_(last_valid_time) {}
  double last_valid_time() const { return last_valid_time_; }

 private:
  double last_valid_time_;
};

}  // namespace ftsmc
