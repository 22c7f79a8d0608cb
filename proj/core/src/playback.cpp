#include "s2st/playback.hpp"

#include <algorithm>
#include <stdexcept>

#include "s2st/transducer.hpp"

namespace s2st {

PlaybackPlan schedule_playback(std::span<const SynthChunk> chunks) {
  PlaybackPlan plan;
  plan.entries.reserve(chunks.size());
  Millis free_at = 0;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const SynthChunk& c = chunks[i];
    if (i > 0 && c.ready_ms < chunks[i - 1].ready_ms) {
      throw std::invalid_argument("schedule_playback: ready times must be non-decreasing");
    }
    const Millis start = i == 0 ? c.ready_ms : std::max(c.ready_ms, free_at);
    plan.entries.push_back({start, start - c.ready_ms});
    free_at = start + c.duration_ms;
  }
  return plan;
}

std::vector<SynthChunk> chunks_from_log(std::span<const TimedEvent> itts_events) {
  std::vector<SynthChunk> out;
  for (const TimedEvent& ev : itts_events) {
    const SynthChunkRef* c = ev.chunk();
    if (c == nullptr) continue;
    out.push_back(SynthChunk{make_accent_phrase(split_whitespace(c->phrase_text), 0), ev.emit_ms,
                             c->duration_ms, ev.provenance.segment_id});
  }
  return out;
}

}  // namespace s2st
