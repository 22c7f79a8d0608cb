#include "s2st/stage.hpp"

#include <algorithm>
#include <stdexcept>

#include "s2st/error.hpp"
#include "s2st/validate.hpp"

namespace s2st {

Action PassThroughPolicy::next_action(bool input_available, bool output_pending) const {
  if (output_pending) return Action::Write;
  if (source_done_) return Action::Flush;
  return input_available ? Action::Read : Action::Stall;
}

WaitKPolicy::WaitKPolicy(int k) {
  if (k < 1) throw std::invalid_argument("wait-k requires k >= 1");
  state_.k = k;
}

TokenStage::TokenStage(std::string name, Channel output, std::unique_ptr<StagePolicy> policy,
                       std::unique_ptr<Transducer> transducer, ComputeModel compute)
    : name_(std::move(name)),
      events_(output),
      policy_(std::move(policy)),
      transducer_(std::move(transducer)),
      compute_(compute) {}

std::vector<TimedEvent> TokenStage::push(const TimedEvent& input, Millis now_ms) {
  if (input.token() == nullptr) {
    throw MalformedInputError(name_ + ": token stage received a non-token event (seq " +
                              std::to_string(input.seq) + ")");
  }
  inbox_.push_back(input);
  std::vector<TimedEvent> out;
  step(now_ms, out);
  return out;
}

void TokenStage::finish() {
  std::vector<TimedEvent> ignored;
  step(last_available_, ignored);
  if (in_segment_ || !inbox_.empty() || !pending_.empty()) {
    throw DeadlockError(name_, "input ended inside segment " +
                                   std::to_string(segment_.segment_id) + " after " +
                                   std::to_string(n_read_) + " reads and " +
                                   std::to_string(n_written_) + " writes");
  }
}

void TokenStage::trace(Action a, TokenKind kind) const {
  if (trace_) trace_(StageTraceEntry{a, kind, n_read_, n_written_});
}

void TokenStage::emit(Token token, Millis emit_ms, std::vector<TimedEvent>& out) {
  last_emit_ = emit_ms;
  out.push_back(events_.make(emit_ms, std::move(token), segment_));
}

void TokenStage::consume(const TimedEvent& ev) {
  last_available_ = std::max(last_available_, ev.available_ms());
  if (!in_segment_) {
    in_segment_ = true;
    segment_ = ev.provenance;
  } else {
    segment_.first_input_ms = std::min(segment_.first_input_ms, ev.provenance.first_input_ms);
  }

  const Token& tok = *ev.token();
  switch (tok.kind()) {
    case TokenKind::Regular:
      ++n_read_;
      policy_->on_read();
      for (Token& t : transducer_->consume(tok)) pending_.push_back({std::move(t), true});
      break;
    case TokenKind::EndSeq:
      policy_->on_source_done();
      for (Token& t : transducer_->flush()) pending_.push_back({std::move(t), true});
      break;
    case TokenKind::EndBlock:
      if (policy_->forwards_block_marks()) pending_.push_back({tok, false});
      break;
    case TokenKind::BeginSeq:
      pending_.push_back({tok, false});
      break;
  }
}

void TokenStage::step(Millis now_ms, std::vector<TimedEvent>& out) {
  while (true) {
    // Markers are not policy writes: they leave as soon as they reach the
    // front of the queue.
    while (!pending_.empty() && !pending_.front().counts_as_write) {
      const TokenKind kind = pending_.front().token.kind();
      emit(std::move(pending_.front().token), std::max({last_available_, last_emit_, now_ms}), out);
      pending_.pop_front();
      trace(Action::Write, kind);
    }

    const Action action = policy_->next_action(!inbox_.empty(), !pending_.empty());
    switch (action) {
      case Action::Read: {
        const TimedEvent ev = std::move(inbox_.front());
        inbox_.pop_front();
        consume(ev);
        trace(Action::Read, ev.token()->kind());
        break;
      }
      case Action::Write: {
        Pending p = std::move(pending_.front());
        pending_.pop_front();
        ++n_written_;
        policy_->on_write();
        const Millis t = std::max({last_available_, last_emit_, now_ms}) + compute_.cost(1);
        emit(std::move(p.token), t, out);
        trace(Action::Write, TokenKind::Regular);
        break;
      }
      case Action::Flush: {
        emit(Token::end_seq(), std::max({last_available_, last_emit_, now_ms}), out);
        trace(Action::Flush, TokenKind::EndSeq);
        policy_->reset();
        in_segment_ = false;
        n_read_ = 0;
        n_written_ = 0;
        break;
      }
      case Action::Stall:
        return;
    }
  }
}

std::vector<TimedEvent> drive_stage(Stage& stage, std::span<const TimedEvent> input, Clock& clock) {
  std::vector<TimedEvent> out;
  for (const TimedEvent& ev : input) {
    if (clock.mode() == Clock::Mode::Virtual) {
      clock.advance_to(std::max(clock.now_ms(), ev.available_ms()));
    }
    std::vector<TimedEvent> produced = stage.push(ev, clock.now_ms());
    out.insert(out.end(), std::make_move_iterator(produced.begin()),
               std::make_move_iterator(produced.end()));
  }
  stage.finish();
  return out;
}

std::vector<TimedEvent> run_stage(std::unique_ptr<StagePolicy> policy,
                                  std::unique_ptr<Transducer> transducer,
                                  std::span<const TimedEvent> input, Clock& clock,
                                  ComputeModel compute, Channel output) {
  if (const ValidationReport report = validate_stream(input); !report.ok()) {
    throw MalformedInputError("run_stage input failed validation:\n" + report.to_string());
  }
  TokenStage stage(std::string(channel_name(output)), output, std::move(policy),
                   std::move(transducer), compute);
  return drive_stage(stage, input, clock);
}

}  // namespace s2st
