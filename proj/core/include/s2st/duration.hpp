#pragma once

#include <map>
#include <optional>
#include <string>

#include "s2st/accent.hpp"
#include "s2st/event.hpp"

namespace s2st {

inline constexpr Millis kFramePeriodMs = 5;
inline constexpr Millis kDefaultMoraMs = 150;

/// Rounds up to the next multiple of the 5 ms synthesis frame.
constexpr Millis round_up_to_frame(Millis ms) noexcept {
  return (ms + kFramePeriodMs - 1) / kFramePeriodMs * kFramePeriodMs;
}

class DurationModel {
 public:
  virtual ~DurationModel() = default;
  /// Positive duration, a multiple of the frame period.
  virtual Millis mora_duration(const MoraFeature& mora) const = 0;
};

/// Per-mora lookup with an optional fallback. Ignores positional features.
class TableDurationModel final : public DurationModel {
 public:
  TableDurationModel(std::map<std::string, Millis> table, std::optional<Millis> fallback);
  static TableDurationModel uniform(Millis ms = kDefaultMoraMs) { return {{}, ms}; }

  /// Throws UnknownMoraError when the mora is missing and no fallback is set.
  Millis mora_duration(const MoraFeature& mora) const override;

 private:
  std::map<std::string, Millis> table_;
  std::optional<Millis> fallback_;
};

/// Parses `mora<TAB>ms` lines plus an optional `default<TAB>ms`. Durations
/// must be positive integers. Throws MalformedInputError naming the line.
TableDurationModel parse_duration_table(const std::string& text);
TableDurationModel load_duration_table(const std::string& path);

/// Sum of per-mora durations, each rounded up to the frame period.
Millis predict_duration(const AccentPhrase& phrase, const DurationModel& model);

}  // namespace s2st
