#pragma once

#include <memory>
#include <string>
#include <vector>

#include "s2st/block_emitter.hpp"
#include "s2st/stage.hpp"

namespace s2st {

/// Recognizer seen by the block emitter: turns the n-th block of the current
/// segment into tokens.
class BlockRecognizer {
 public:
  virtual ~BlockRecognizer() = default;
  virtual std::vector<Token> recognize_block(std::int64_t block_index) = 0;
  /// Segment ended after `n_blocks` blocks: returns anything still owed and
  /// moves on to a fresh segment.
  virtual std::vector<Token> flush(std::int64_t n_blocks) = 0;
};

/// Per segment, per block: the tokens recognized for that block.
using Transcript = std::vector<std::vector<std::vector<Token>>>;

/// Parses one segment per non-empty line; tokens are whitespace separated and
/// a literal `<m>` closes a block. A trailing `<m>` is optional. `<s>` and
/// `</s>` are not allowed.
Transcript parse_transcript(const std::string& text);
Transcript load_transcript(const std::string& path);

/// Replays a fixed transcript. Segments are consumed in arrival order; blocks
/// past the end of the transcript yield nothing, and transcript blocks the
/// audio never reached are returned at flush.
class ScriptedRecognizer final : public BlockRecognizer {
 public:
  explicit ScriptedRecognizer(Transcript transcript) : transcript_(std::move(transcript)) {}

  std::vector<Token> recognize_block(std::int64_t block_index) override;
  std::vector<Token> flush(std::int64_t n_blocks) override;

 private:
  const std::vector<std::vector<Token>>* current() const;

  Transcript transcript_;
  std::size_t segment_ = 0;
};

/// Fixed-block incremental recognizer with look-ahead. Consumes SRC frame
/// blocks; after each recognized block it writes the block's tokens followed
/// by an end-of-block marker; at EndSeq it writes the remaining blocks (whose
/// look-ahead is cut by the segment end) and an EndSeq.
class IsrStage final : public Stage {
 public:
  IsrStage(std::string name, BlockEmitterConfig cfg, std::unique_ptr<BlockRecognizer> recognizer);

  const std::string& name() const noexcept override { return name_; }
  Channel output_channel() const noexcept override { return events_.channel(); }
  std::vector<TimedEvent> push(const TimedEvent& input, Millis now_ms) override;
  void finish() override;

 private:
  void emit_block(std::int64_t block, Millis ready_ms, Millis now_ms, std::vector<TimedEvent>& out);
  void emit(Token token, Millis t, std::vector<TimedEvent>& out);

  std::string name_;
  BlockEmitterConfig cfg_;
  std::unique_ptr<BlockRecognizer> recognizer_;
  EventFactory events_{Channel::ISR};

  bool in_segment_ = false;
  Provenance segment_;
  std::int64_t received_ = 0;  // blocks received in this segment
  std::int64_t emitted_ = 0;   // blocks recognized in this segment
  Millis last_emit_ = 0;
};

}  // namespace s2st
