#include "s2st/event.hpp"

#include <charconv>
#include <stdexcept>

namespace s2st {

Token::Token(TokenKind kind) : kind_(kind), text_(canonical_text(kind)) {}

Token Token::regular(std::string text) {
  if (!is_valid_token_text(text)) {
    throw std::invalid_argument("invalid token text");
  }
  if (text == kBeginSeqText || text == kEndBlockText || text == kEndSeqText) {
    throw std::invalid_argument("regular token cannot use special text " + text);
  }
  return Token(TokenKind::Regular, std::move(text));
}

std::string_view canonical_text(TokenKind kind) noexcept {
  switch (kind) {
    case TokenKind::BeginSeq: return kBeginSeqText;
    case TokenKind::EndBlock: return kEndBlockText;
    case TokenKind::EndSeq: return kEndSeqText;
    case TokenKind::Regular: break;
  }
  return {};
}

bool is_valid_token_text(std::string_view text) noexcept {
  if (text.empty()) return false;
  for (char c : text) {
    if (c == '\t' || c == '\n' || c == '\r') return false;
  }
  return true;
}

std::optional<HopMs> HopMs::parse(std::string_view text) {
  const auto dot = text.find('.');
  const std::string_view int_part = text.substr(0, dot);
  if (int_part.empty() || (int_part.size() > 1 && int_part.front() == '0')) return std::nullopt;
  std::int64_t whole = 0;
  {
    const auto* end = int_part.data() + int_part.size();
    auto [ptr, ec] = std::from_chars(int_part.data(), end, whole);
    if (ec != std::errc{} || ptr != end || int_part.front() == '-' || int_part.front() == '+') {
      return std::nullopt;
    }
  }
  std::int64_t frac = 0;
  if (dot != std::string_view::npos) {
    const std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 4 || frac_part.back() == '0') return std::nullopt;
    for (char c : frac_part) {
      if (c < '0' || c > '9') return std::nullopt;
    }
    std::int64_t digits = 0;
    std::from_chars(frac_part.data(), frac_part.data() + frac_part.size(), digits);
    frac = digits;
    for (std::size_t i = frac_part.size(); i < 4; ++i) frac *= 10;
  }
  if (whole > (INT64_MAX - frac) / kScale) return std::nullopt;
  return from_scaled(whole * kScale + frac);
}

std::string HopMs::to_string() const {
  std::string out = std::to_string(scaled_ / kScale);
  std::int64_t frac = scaled_ % kScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 4 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

std::string_view channel_name(Channel c) noexcept {
  switch (c) {
    case Channel::Source: return "SRC";
    case Channel::ISR: return "ISR";
    case Channel::IMT: return "IMT";
    case Channel::ITTS: return "ITTS";
  }
  return "?";
}

std::optional<Channel> channel_from_name(std::string_view name) noexcept {
  if (name == "SRC") return Channel::Source;
  if (name == "ISR") return Channel::ISR;
  if (name == "IMT") return Channel::IMT;
  if (name == "ITTS") return Channel::ITTS;
  return std::nullopt;
}

Millis TimedEvent::available_ms() const noexcept {
  if (const FrameSpan* f = frames()) return emit_ms + f->duration_ms();
  return emit_ms;
}

}  // namespace s2st
