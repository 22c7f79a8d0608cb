#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "s2st/event.hpp"
#include "s2st/playback.hpp"

namespace s2st {

/// First-output times of one source segment on every downstream channel.
struct AlignedUnit {
  std::int64_t segment_id = 0;
  Millis source_start_ms = 0;
  std::optional<Millis> isr_ms;
  std::optional<Millis> imt_ms;
  std::optional<Millis> itts_ms;

  bool complete() const noexcept { return isr_ms && imt_ms && itts_ms; }
  std::vector<Channel> missing_channels() const;
  /// source <= ISR <= IMT <= ITTS on the channels present.
  bool cascade_ordered() const noexcept;
};

/// Event logs of one run, any of which may be empty.
struct ChannelLogs {
  std::vector<TimedEvent> src, isr, imt, itts;

  const std::vector<TimedEvent>& of(Channel c) const;
  bool empty() const noexcept { return src.empty() && isr.empty() && imt.empty() && itts.empty(); }
};

/// One unit per segment id in the source log, in order of first appearance.
/// A channel's first output is the earliest Regular token or chunk of that
/// segment; channels without one are left empty. Throws
/// InconsistentProvenanceError if a channel names a segment the source never
/// had.
std::vector<AlignedUnit> align_outputs(const ChannelLogs& logs);

struct DelayStats {
  double mean_s = 0.0;
  double variance_s2 = 0.0;  // sample variance, 0 for a single unit
  std::size_t count = 0;
};

struct LatencyReport {
  DelayStats isr, imt, itts;
  double speak_latency_mean_s = 0.0;
  double speak_latency_max_s = 0.0;
  std::size_t units = 0;  // units with all three channels present

  /// `key = value` lines with a fixed key set, seconds to three decimals.
  std::string to_text() const;
};

/// Mean and sample variance (n - 1 denominator) of each module's delay from
/// the segment's source start, over the complete units. Throws EmptyInputError
/// if no unit is complete.
LatencyReport compute_evs(std::span<const AlignedUnit> units);

/// Adds speaking-latency statistics of a playback plan to `report`.
void add_speaking_latency(LatencyReport& report, const PlaybackPlan& plan);

/// Per-unit table, tab separated, with a header row. Missing values are "-".
std::string units_to_tsv(std::span<const AlignedUnit> units);

/// Three decimals, round half away from zero.
std::string format_fixed3(double value);

}  // namespace s2st
