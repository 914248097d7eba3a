#pragma once

#include <stdexcept>
#include <string>

namespace eec {

// Malformed input file. Carries "file:line:" in the message.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& file, int line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
};

// Well-formed input that violates a documented invariant.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Cross-referenced data that disagrees with itself (orphan ids, count laws).
class IntegrityError : public std::runtime_error {
public:
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem trouble: unreadable source, unwritable destination.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eec
