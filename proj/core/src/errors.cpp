#include "fog2c/errors.hpp"

#include <utility>

namespace fog2c {
namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  if (issues.empty()) return "configuration error";
  std::string out = issues.front();
  for (std::size_t i = 1; i < issues.size(); ++i) {
    out += "; ";
    out += issues[i];
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

}  // namespace fog2c
