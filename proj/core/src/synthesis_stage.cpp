#include "s2st/synthesis_stage.hpp"

#include <algorithm>

#include "s2st/error.hpp"

namespace s2st {

SynthesisStage::SynthesisStage(std::string name, BoundaryRules rules,
                               std::shared_ptr<const DurationModel> model, ComputeModel compute)
    : name_(std::move(name)),
      rules_(std::move(rules)),
      model_(std::move(model)),
      compute_(compute),
      phraser_(rules_) {}

void SynthesisStage::synthesize(AccentPhrase phrase, Millis available, Millis now_ms,
                                std::vector<TimedEvent>& out) {
  const auto n_tokens = static_cast<std::int64_t>(phrase.surface().size());
  const Millis ready = std::max({available, last_emit_, now_ms}) + compute_.cost(n_tokens);
  const Millis duration = predict_duration(phrase, *model_);
  last_emit_ = ready;
  out.push_back(events_.make(ready, SynthChunkRef{duration, phrase.text()}, segment_));
  chunks_.push_back(SynthChunk{std::move(phrase), ready, duration, segment_.segment_id});
}

std::vector<TimedEvent> SynthesisStage::push(const TimedEvent& input, Millis now_ms) {
  const Token* tok = input.token();
  if (tok == nullptr) {
    throw MalformedInputError(name_ + ": synthesis stage expects tokens (seq " +
                              std::to_string(input.seq) + ")");
  }
  if (!in_segment_) {
    in_segment_ = true;
    segment_ = input.provenance;
  } else {
    segment_.first_input_ms = std::min(segment_.first_input_ms, input.provenance.first_input_ms);
  }
  const Millis available = input.available_ms();
  std::vector<TimedEvent> out;
  switch (tok->kind()) {
    case TokenKind::Regular:
      if (auto phrase = phraser_.push(tok->text())) {
        synthesize(std::move(*phrase), available, now_ms, out);
      }
      break;
    case TokenKind::EndSeq: {
      if (auto phrase = phraser_.flush()) synthesize(std::move(*phrase), available, now_ms, out);
      const Millis t = std::max({available, last_emit_, now_ms});
      last_emit_ = t;
      out.push_back(events_.make(t, Token::end_seq(), segment_));
      in_segment_ = false;
      break;
    }
    case TokenKind::BeginSeq: {
      const Millis t = std::max({available, last_emit_, now_ms});
      last_emit_ = t;
      out.push_back(events_.make(t, *tok, segment_));
      break;
    }
    case TokenKind::EndBlock:
      break;
  }
  return out;
}

void SynthesisStage::finish() {
  if (in_segment_) {
    throw DeadlockError(name_, "input ended inside segment " +
                                   std::to_string(segment_.segment_id) + " with " +
                                   std::to_string(phraser_.buffered_tokens()) +
                                   " tokens buffered");
  }
}

}  // namespace s2st
