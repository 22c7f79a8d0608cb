#pragma once

#include <array>
#include <memory>
#include <vector>

#include "s2st/clock.hpp"
#include "s2st/stage.hpp"

namespace s2st {

struct SimulationResult {
  /// One log per channel, indexed by static_cast<int>(Channel).
  std::array<std::vector<TimedEvent>, kChannelCount> logs;
  Millis end_ms = 0;

  const std::vector<TimedEvent>& log(Channel c) const { return logs[static_cast<int>(c)]; }
};

/// Single-threaded discrete-event driver for a linear chain of stages.
///
/// Every event is delivered to the next stage at its availability time (kept
/// FIFO per link). Deliveries are processed in (time, stage, seq) order and
/// the virtual clock advances to each delivery time, so a run is a pure
/// function of the source stream and the stage configuration.
class Simulator {
 public:
  explicit Simulator(std::vector<std::unique_ptr<Stage>> chain);

  /// Throws DeadlockError (from the stalled stage) or MalformedInputError.
  SimulationResult run(const std::vector<TimedEvent>& source);

  const Clock& clock() const noexcept { return clock_; }
  Stage& stage(std::size_t i) { return *chain_.at(i); }

 private:
  std::vector<std::unique_ptr<Stage>> chain_;
  Clock clock_ = Clock::virtual_clock();
};

}  // namespace s2st
