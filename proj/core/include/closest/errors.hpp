#pragma once

#include <stdexcept>
#include <string>

namespace closest {

/// Malformed textual input: instance files, CSV, or subproblem documents.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input whose content violates an invariant, e.g. a
/// frontier value outside its domain or a tampered instance hash.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace closest
