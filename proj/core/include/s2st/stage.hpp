#pragma once

// The incremental stage contract. A stage consumes the event stream of the
// stage before it and emits its own channel's events. Each output is stamped
//
//   emit_ms = max(availability of every input consumed so far,
//                 previous output's emit_ms, delivery time) + compute cost
//
// and carries the segment's provenance: the segment id and the earliest
// first_input_ms of the inputs consumed for that segment.

#include <deque>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "s2st/clock.hpp"
#include "s2st/event.hpp"
#include "s2st/transducer.hpp"
#include "s2st/wait_k.hpp"

namespace s2st {

/// Per-stage constant plus per-token constant, charged on every output.
struct ComputeModel {
  Millis fixed_ms = 0;
  Millis per_token_ms = 0;

  Millis cost(std::int64_t n_tokens) const noexcept { return fixed_ms + per_token_ms * n_tokens; }
};

class Stage {
 public:
  virtual ~Stage() = default;

  virtual const std::string& name() const noexcept = 0;
  virtual Channel output_channel() const noexcept = 0;

  /// Delivers one input event at `now_ms`. Returns the events emitted in
  /// response, in emission order.
  virtual std::vector<TimedEvent> push(const TimedEvent& input, Millis now_ms) = 0;

  /// No more input will arrive. Throws DeadlockError if a segment is left
  /// unfinished.
  virtual void finish() = 0;
};

/// Read/write decision rule of a token stage.
class StagePolicy {
 public:
  virtual ~StagePolicy() = default;

  virtual Action next_action(bool input_available, bool output_pending) const = 0;
  virtual void on_read() = 0;  // one Regular token consumed
  virtual void on_write() = 0;
  virtual void on_source_done() = 0;
  virtual void reset() = 0;  // back to the initial state after EndSeq
  /// Whether EndBlock markers are copied to the output.
  virtual bool forwards_block_marks() const noexcept = 0;
};

/// Writes every transducer output as soon as it exists.
class PassThroughPolicy final : public StagePolicy {
 public:
  Action next_action(bool input_available, bool output_pending) const override;
  void on_read() override {}
  void on_write() override {}
  void on_source_done() override { source_done_ = true; }
  void reset() override { source_done_ = false; }
  bool forwards_block_marks() const noexcept override { return true; }

 private:
  bool source_done_ = false;
};

class WaitKPolicy final : public StagePolicy {
 public:
  explicit WaitKPolicy(int k);

  Action next_action(bool input_available, bool output_pending) const override {
    return wait_k_next_action(state_, input_available, output_pending);
  }
  void on_read() override { ++state_.n_read; }
  void on_write() override { ++state_.n_written; }
  void on_source_done() override { state_.source_done = true; }
  void reset() override { state_ = WaitKState{state_.k, 0, 0, false}; }
  bool forwards_block_marks() const noexcept override { return false; }

  const WaitKState& state() const noexcept { return state_; }

 private:
  WaitKState state_;
};

/// One step taken by a TokenStage, for instrumentation.
struct StageTraceEntry {
  Action action;
  TokenKind token_kind;  // kind of the token read or written
  std::int64_t n_read;   // Regular tokens read in the current segment
  std::int64_t n_written;
};

/// Generic incremental token stage: a policy deciding when to read and write
/// around a transducer that decides what to write.
class TokenStage final : public Stage {
 public:
  TokenStage(std::string name, Channel output, std::unique_ptr<StagePolicy> policy,
             std::unique_ptr<Transducer> transducer, ComputeModel compute = {});

  const std::string& name() const noexcept override { return name_; }
  Channel output_channel() const noexcept override { return events_.channel(); }
  std::vector<TimedEvent> push(const TimedEvent& input, Millis now_ms) override;
  void finish() override;

  void set_trace(std::function<void(const StageTraceEntry&)> trace) { trace_ = std::move(trace); }

 private:
  struct Pending {
    Token token;
    bool counts_as_write;
  };

  void step(Millis now_ms, std::vector<TimedEvent>& out);
  void consume(const TimedEvent& ev);
  void emit(Token token, Millis emit_ms, std::vector<TimedEvent>& out);
  void trace(Action a, TokenKind kind) const;

  std::string name_;
  EventFactory events_;
  std::unique_ptr<StagePolicy> policy_;
  std::unique_ptr<Transducer> transducer_;
  ComputeModel compute_;
  std::function<void(const StageTraceEntry&)> trace_;

  std::deque<TimedEvent> inbox_;
  std::deque<Pending> pending_;
  Millis last_available_ = 0;
  Millis last_emit_ = 0;
  bool in_segment_ = false;
  Provenance segment_;
  std::int64_t n_read_ = 0;
  std::int64_t n_written_ = 0;
};

/// Runs one token stage over a complete input stream. In virtual mode the
/// clock is advanced to each input's availability before delivery. Throws
/// MalformedInputError if the input fails validate_stream, and propagates
/// DeadlockError.
std::vector<TimedEvent> run_stage(std::unique_ptr<StagePolicy> policy,
                                  std::unique_ptr<Transducer> transducer,
                                  std::span<const TimedEvent> input, Clock& clock,
                                  ComputeModel compute = {}, Channel output = Channel::IMT);

/// Feeds `input` through any stage with the same clock handling as run_stage.
std::vector<TimedEvent> drive_stage(Stage& stage, std::span<const TimedEvent> input, Clock& clock);

}  // namespace s2st
