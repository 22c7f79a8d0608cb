#include "s2st/error.hpp"

#include <sstream>

namespace s2st {

const char* to_string(ParseError::Kind kind) noexcept {
  switch (kind) {
    case ParseError::Kind::MalformedLine: return "MalformedLine";
    case ParseError::Kind::UnknownChannel: return "UnknownChannel";
    case ParseError::Kind::UnknownPayloadKind: return "UnknownPayloadKind";
  }
  return "?";
}

namespace {

std::string parse_message(ParseError::Kind kind, const std::string& field, std::size_t offset,
                          const std::string& detail) {
  std::ostringstream os;
  os << to_string(kind) << " (field=" << field << ", offset=" << offset << ")";
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

}  // namespace

ParseError::ParseError(Kind kind, std::string field, std::size_t offset, const std::string& detail)
    : Error(parse_message(kind, field, offset, detail)),
      kind_(kind),
      field_(std::move(field)),
      offset_(offset),
      detail_(detail) {}

DeadlockError::DeadlockError(std::string stage, const std::string& detail)
    : Error("deadlock in stage " + stage + ": " + detail), stage_(std::move(stage)) {}

NotStochasticError::NotStochasticError(std::size_t row, double sum)
    : Error("attention row " + std::to_string(row) + " sums to " + std::to_string(sum) +
            ", expected 1"),
      row_(row) {}

UnknownMoraError::UnknownMoraError(const std::string& mora)
    : Error("no duration for mora '" + mora + "' and no default configured") {}

ConfigError::ConfigError(std::string field, const std::string& detail)
    : Error(field + ": " + detail), field_(std::move(field)) {}

}  // namespace s2st
