#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fog2c {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a cost function.
class DomainError : public Error {
public:
  using Error::Error;
};

/// No configuration satisfies the latency constraint.
class InfeasibleError : public Error {
public:
  using Error::Error;
};

/// No route exists between two nodes.
class UnreachableError : public Error {
public:
  using Error::Error;
};

/// Invalid scenario input. Carries every issue found, not only the first.
class ConfigError : public Error {
public:
  explicit ConfigError(std::vector<std::string> issues);
  explicit ConfigError(const std::string& issue)
      : ConfigError(std::vector<std::string>{issue}) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
  std::vector<std::string> issues_;
};

}  // namespace fog2c
