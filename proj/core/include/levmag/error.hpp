#pragma once

#include <stdexcept>
#include <string>

namespace levmag {

/// Malformed or physically invalid configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was asked to evaluate outside its domain (zero coupling,
/// singular denominators, unstable step sizes, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace levmag
