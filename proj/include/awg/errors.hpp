#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace awg {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite or otherwise invalid numeric argument.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Violated operation precondition (e.g. ON-branch query below v_forward).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Requested value lies outside an achievable interval.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double lo, double hi)
      : Error(what), min_(lo), max_(hi) {}
  double min() const { return min_; }
  double max() const { return max_; }

 private:
  double min_;
  double max_;
};

// Malformed or inconsistent configuration. `field` names the offending key
// when it is known.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, std::string field = {})
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

  // Same field, message prefixed with e.g. the config file path.
  static ConfigError in_context(const std::string& context, const ConfigError& e) {
    ConfigError out(context + ": " + e.what());
    out.field_ = e.field_;
    return out;
  }

 private:
  std::string field_;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

// Reflection coefficient pole (Z_eff == -z0).
class SingularityError : public Error {
 public:
  using Error::Error;
};

class DegenerateFilterError : public Error {
 public:
  using Error::Error;
};

// An ON unit was driven below the forward conduction voltage.
class ModulationUnderflowError : public Error {
 public:
  ModulationUnderflowError(const std::string& what, std::size_t input, std::size_t sample)
      : Error(what), input_(input), sample_(sample) {}
  std::size_t input() const { return input_; }
  std::size_t sample() const { return sample_; }

 private:
  std::size_t input_;
  std::size_t sample_;
};

// Overlap-add normalisation vanished at some output sample.
class CoverageError : public Error {
 public:
  CoverageError(const std::string& what, std::size_t sample) : Error(what), sample_(sample) {}
  std::size_t sample() const { return sample_; }

 private:
  std::size_t sample_;
};

// Target needs bandwidth the control circuit cannot reproduce.
class FeasibilityError : public Error {
 public:
  FeasibilityError(const std::string& what, double band_lo_hz, double band_hi_hz)
      : Error(what), band_lo_(band_lo_hz), band_hi_(band_hi_hz) {}
  double band_lo_hz() const { return band_lo_; }
  double band_hi_hz() const { return band_hi_; }

 private:
  double band_lo_;
  double band_hi_;
};

// Collects non-fatal diagnostics. Operations that can warn take an optional
// pointer to one of these.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
  if (sink != nullptr) sink->push_back(std::move(message));
}

}  // namespace awg
