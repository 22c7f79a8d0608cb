#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "s2st/event.hpp"

namespace s2st {

enum class ViolationKind {
  ChannelMismatch,
  SeqGap,
  MonotonicityViolation,
  CausalityViolation,
  UnterminatedSegment,
  MisplacedBeginSeq,
  SegmentMixing,
  SegmentReopened,
};

const char* to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::int64_t seq;  // seq of the offending event (last event for UnterminatedSegment)
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const noexcept;
  std::string to_string() const;
};

/// Checks one channel's stream: dense seq from 0, non-decreasing emit_ms,
/// causality, and segment bracketing (every segment's run ends with exactly
/// one EndSeq; a BeginSeq may only open a run).
ValidationReport validate_stream(std::span<const TimedEvent> events);

}  // namespace s2st
