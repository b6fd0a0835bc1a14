#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polydet {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WorkspaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polydet
