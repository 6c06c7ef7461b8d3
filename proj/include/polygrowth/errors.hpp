#pragma once

#include <stdexcept>
#include <string>

namespace polygrowth {

/// Some direction does not advance under the deterministic skeleton.
class NotSupercritical : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed rule or run configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace polygrowth
