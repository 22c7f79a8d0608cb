#include "s2st/isr_stage.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "s2st/error.hpp"

namespace s2st {

Transcript parse_transcript(const std::string& text) {
  Transcript out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> words = split_whitespace(line);
    if (words.empty() || words.front().front() == '#') continue;
    std::vector<std::vector<Token>> blocks(1);
    for (const std::string& w : words) {
      if (w == kEndBlockText) {
        blocks.emplace_back();
        continue;
      }
      if (w == kBeginSeqText || w == kEndSeqText) {
        throw MalformedInputError("transcript line " + std::to_string(line_no) +
                                  ": sequence markers are implicit");
      }
      blocks.back().push_back(Token::regular(w));
    }
    if (blocks.size() > 1 && blocks.back().empty()) blocks.pop_back();
    out.push_back(std::move(blocks));
  }
  return out;
}

Transcript load_transcript(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open transcript " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_transcript(ss.str());
}

const std::vector<std::vector<Token>>* ScriptedRecognizer::current() const {
  return segment_ < transcript_.size() ? &transcript_[segment_] : nullptr;
}

std::vector<Token> ScriptedRecognizer::recognize_block(std::int64_t block_index) {
  const auto* seg = current();
  if (seg == nullptr || block_index >= static_cast<std::int64_t>(seg->size())) return {};
  return (*seg)[static_cast<std::size_t>(block_index)];
}

std::vector<Token> ScriptedRecognizer::flush(std::int64_t n_blocks) {
  std::vector<Token> rest;
  if (const auto* seg = current()) {
    for (auto b = static_cast<std::size_t>(n_blocks); b < seg->size(); ++b) {
      rest.insert(rest.end(), (*seg)[b].begin(), (*seg)[b].end());
    }
  }
  ++segment_;
  return rest;
}

IsrStage::IsrStage(std::string name, BlockEmitterConfig cfg,
                   std::unique_ptr<BlockRecognizer> recognizer)
    : name_(std::move(name)), cfg_(cfg), recognizer_(std::move(recognizer)) {}

void IsrStage::emit(Token token, Millis t, std::vector<TimedEvent>& out) {
  last_emit_ = t;
  out.push_back(events_.make(t, std::move(token), segment_));
}

void IsrStage::emit_block(std::int64_t block, Millis ready_ms, Millis now_ms,
                          std::vector<TimedEvent>& out) {
  const Millis t = std::max({ready_ms, last_emit_, now_ms}) + cfg_.compute_ms_per_block;
  for (Token& tok : recognizer_->recognize_block(block)) emit(std::move(tok), t, out);
  emit(Token::end_block(), t, out);
}

std::vector<TimedEvent> IsrStage::push(const TimedEvent& input, Millis now_ms) {
  std::vector<TimedEvent> out;
  if (!in_segment_) {
    in_segment_ = true;
    segment_ = input.provenance;
    received_ = 0;
    emitted_ = 0;
  } else {
    segment_.first_input_ms = std::min(segment_.first_input_ms, input.provenance.first_input_ms);
  }
  const Millis available = input.available_ms();

  if (input.frames() != nullptr) {
    ++received_;
    // Block b needs blocks b..b+lookahead in hand.
    while (emitted_ + cfg_.lookahead_blocks < received_) {
      emit_block(emitted_++, available, now_ms, out);
    }
    return out;
  }

  const Token* tok = input.token();
  if (tok == nullptr) {
    throw MalformedInputError(name_ + ": unexpected synthesized chunk on source channel");
  }
  switch (tok->kind()) {
    case TokenKind::BeginSeq:
      emit(*tok, std::max({available, last_emit_, now_ms}), out);
      break;
    case TokenKind::EndSeq: {
      while (emitted_ < received_) emit_block(emitted_++, available, now_ms, out);
      std::vector<Token> rest = recognizer_->flush(received_);
      if (!rest.empty()) {
        const Millis t = std::max({available, last_emit_, now_ms}) + cfg_.compute_ms_per_block;
        for (Token& r : rest) emit(std::move(r), t, out);
        emit(Token::end_block(), t, out);
      }
      emit(Token::end_seq(), std::max({available, last_emit_, now_ms}), out);
      in_segment_ = false;
      break;
    }
    case TokenKind::Regular:
    case TokenKind::EndBlock:
      throw MalformedInputError(name_ + ": source channel carries frame blocks, not tokens");
  }
  return out;
}

void IsrStage::finish() {
  if (in_segment_) {
    throw DeadlockError(name_, "input ended inside segment " +
                                   std::to_string(segment_.segment_id) + " after " +
                                   std::to_string(received_) + " blocks");
  }
}

}  // namespace s2st
