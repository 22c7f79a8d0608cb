#pragma once

#include <chrono>

#include "s2st/event.hpp"

namespace s2st {

/// Millisecond clock. Virtual clocks move only through advance_to() and never
/// go backwards; wall clocks report elapsed system time since an epoch that
/// cooperating processes agree on.
class Clock {
 public:
  enum class Mode { Virtual, Wall };

  static Clock virtual_clock(Millis start_ms = 0) { return Clock(Mode::Virtual, start_ms, 0); }
  /// `epoch_unix_ms` is a std::chrono::system_clock timestamp in ms.
  static Clock wall_clock(std::int64_t epoch_unix_ms) { return Clock(Mode::Wall, 0, epoch_unix_ms); }
  static std::int64_t unix_now_ms();

  Mode mode() const noexcept { return mode_; }
  Millis now_ms() const;

  /// Virtual mode only. Throws std::logic_error if `t` is in the past or the
  /// clock is a wall clock.
  void advance_to(Millis t);

 private:
  Clock(Mode mode, Millis now, std::int64_t epoch) : mode_(mode), now_(now), epoch_(epoch) {}

  Mode mode_;
  Millis now_;
  std::int64_t epoch_;
};

}  // namespace s2st
