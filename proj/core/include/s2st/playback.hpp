#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "s2st/accent.hpp"
#include "s2st/event.hpp"

namespace s2st {

struct SynthChunk {
  AccentPhrase phrase;
  Millis ready_ms = 0;     // inputs received and synthesis finished
  Millis duration_ms = 0;  // playback length, a multiple of the frame period
  std::int64_t segment_id = 0;
};

struct PlaybackEntry {
  Millis play_start_ms = 0;
  Millis speaking_latency_ms = 0;  // play_start_ms - ready_ms

  friend bool operator==(const PlaybackEntry&, const PlaybackEntry&) = default;
};

struct PlaybackPlan {
  std::vector<PlaybackEntry> entries;
};

/// Single-speaker playback queue: a chunk starts when it is ready or when the
/// previous chunk finishes, whichever is later. Throws std::invalid_argument
/// if ready times decrease.
PlaybackPlan schedule_playback(std::span<const SynthChunk> chunks);

/// Rebuilds chunks from an ITTS event log (chk events; ready = emit_ms).
std::vector<SynthChunk> chunks_from_log(std::span<const TimedEvent> itts_events);

}  // namespace s2st
