#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace s2st {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A wire line that does not match the event grammar.
class ParseError : public Error {
 public:
  enum class Kind { MalformedLine, UnknownChannel, UnknownPayloadKind };

  ParseError(Kind kind, std::string field, std::size_t offset, const std::string& detail);

  Kind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }
  /// Byte offset of the offending field within the line.
  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Kind kind_;
  std::string field_;
  std::size_t offset_;
  std::string detail_;
};

const char* to_string(ParseError::Kind kind) noexcept;

/// A stage can make no further progress and its input is exhausted.
class DeadlockError : public Error {
 public:
  DeadlockError(std::string stage, const std::string& detail);
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class MalformedInputError : public Error {
 public:
  using Error::Error;
};

class NotStochasticError : public Error {
 public:
  NotStochasticError(std::size_t row, double sum);
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class UnknownMoraError : public Error {
 public:
  explicit UnknownMoraError(const std::string& mora);
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class EmptyReferenceError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

class InconsistentProvenanceError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration; `field()` is the dotted key path, e.g. `imt.k`.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& detail);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace s2st
