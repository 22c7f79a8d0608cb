#pragma once

#include <cstdint>
#include <vector>

#include "s2st/event.hpp"

namespace s2st {

struct BlockEmitterConfig {
  std::int64_t block_frames = kDefaultBlockFrames;
  HopMs hop = kDefaultHop;
  std::int64_t lookahead_blocks = 0;
  Millis compute_ms_per_block = 0;

  Millis block_duration_ms() const noexcept { return hop.frames_to_ms(block_frames); }
};

/// Emission time of every block of a segment, relative to the segment start.
///
/// Block b becomes ready once blocks b..b+lookahead have been fully received,
/// i.e. at (b + 1 + lookahead) block durations, except that blocks whose
/// look-ahead would run past the segment end are ready at the segment end. The
/// recognizer handles one block at a time, so
///   emit(b) = max(ready(b), emit(b - 1)) + compute_ms_per_block.
/// A short final block is allowed when total_frames is not a multiple of
/// block_frames. Throws std::invalid_argument if total_frames < 1.
std::vector<Millis> block_emit_schedule(std::int64_t total_frames, const BlockEmitterConfig& cfg);

/// Splits `total_frames` into blocks starting at `segment_start_ms`.
std::vector<FrameBlock> make_frame_blocks(std::int64_t segment_id, Millis segment_start_ms,
                                          std::int64_t total_frames,
                                          const BlockEmitterConfig& cfg);

}  // namespace s2st
