#include "s2st/block_emitter.hpp"

#include <algorithm>
#include <stdexcept>

namespace s2st {

std::vector<Millis> block_emit_schedule(std::int64_t total_frames, const BlockEmitterConfig& cfg) {
  if (total_frames < 1) throw std::invalid_argument("block_emit_schedule: total_frames < 1");
  if (cfg.block_frames < 1) throw std::invalid_argument("block_emit_schedule: block_frames < 1");
  const std::int64_t n_blocks = (total_frames + cfg.block_frames - 1) / cfg.block_frames;
  const Millis segment_end = cfg.hop.frames_to_ms(total_frames);

  std::vector<Millis> out;
  out.reserve(static_cast<std::size_t>(n_blocks));
  Millis previous = 0;
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    const std::int64_t needed_frames = (b + 1 + cfg.lookahead_blocks) * cfg.block_frames;
    const Millis ready = std::min(cfg.hop.frames_to_ms(needed_frames), segment_end);
    const Millis emit = std::max(ready, previous) + cfg.compute_ms_per_block;
    out.push_back(emit);
    previous = emit;
  }
  return out;
}

std::vector<FrameBlock> make_frame_blocks(std::int64_t segment_id, Millis segment_start_ms,
                                          std::int64_t total_frames,
                                          const BlockEmitterConfig& cfg) {
  std::vector<FrameBlock> blocks;
  for (std::int64_t first = 0, b = 0; first < total_frames; first += cfg.block_frames, ++b) {
    const std::int64_t n = std::min(cfg.block_frames, total_frames - first);
    blocks.push_back(FrameBlock{segment_id, b, n, cfg.hop,
                                segment_start_ms + cfg.hop.frames_to_ms(first)});
  }
  return blocks;
}

}  // namespace s2st
