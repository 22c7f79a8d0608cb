#pragma once

// Values exchanged between pipeline stages: tokens, frame blocks, synthesized
// chunk references, and the timed envelope that carries them.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace s2st {

using Millis = std::int64_t;

enum class TokenKind : std::uint8_t { Regular, BeginSeq, EndBlock, EndSeq };

inline constexpr std::string_view kBeginSeqText = "<s>";
inline constexpr std::string_view kEndBlockText = "<m>";
inline constexpr std::string_view kEndSeqText = "</s>";

/// Subword symbol. Special kinds always carry their canonical text.
class Token {
 public:
  /// Throws std::invalid_argument if `text` is empty, contains a tab or
  /// newline, or equals one of the special token texts.
  static Token regular(std::string text);
  static Token begin_seq() { return Token(TokenKind::BeginSeq); }
  static Token end_block() { return Token(TokenKind::EndBlock); }
  static Token end_seq() { return Token(TokenKind::EndSeq); }

  TokenKind kind() const noexcept { return kind_; }
  const std::string& text() const noexcept { return text_; }
  bool is_regular() const noexcept { return kind_ == TokenKind::Regular; }

  friend bool operator==(const Token&, const Token&) = default;

 private:
  explicit Token(TokenKind kind);
  Token(TokenKind kind, std::string text) : kind_(kind), text_(std::move(text)) {}

  TokenKind kind_;
  std::string text_;
};

std::string_view canonical_text(TokenKind kind) noexcept;

/// True if `text` can be carried by a Regular token or a chunk phrase:
/// non-empty, no tab, no CR/LF.
bool is_valid_token_text(std::string_view text) noexcept;

/// Per-frame hop in ten-thousandths of a millisecond, so 550/32 = 17.1875 ms
/// is exact.
class HopMs {
 public:
  static constexpr std::int64_t kScale = 10000;

  constexpr HopMs() = default;
  static constexpr HopMs from_scaled(std::int64_t ten_thousandths) {
    HopMs h;
    h.scaled_ = ten_thousandths;
    return h;
  }
  static constexpr HopMs from_ms(std::int64_t ms) { return from_scaled(ms * kScale); }
  /// Parses the canonical decimal form written by to_string().
  static std::optional<HopMs> parse(std::string_view text);

  constexpr std::int64_t scaled() const noexcept { return scaled_; }
  /// Shortest decimal form: no leading zeros, no trailing fractional zeros.
  std::string to_string() const;
  /// floor(frames * hop) in whole milliseconds.
  constexpr Millis frames_to_ms(std::int64_t frames) const noexcept {
    return frames * scaled_ / kScale;
  }

  friend constexpr bool operator==(HopMs, HopMs) = default;

 private:
  std::int64_t scaled_ = 0;
};

inline constexpr HopMs kDefaultHop = HopMs::from_scaled(171875);  // 17.1875 ms
inline constexpr std::int64_t kDefaultBlockFrames = 32;

/// Payload of a source frame-block event. The owning segment and the block
/// start come from the event envelope (provenance.segment_id, emit_ms).
struct FrameSpan {
  std::int64_t n_frames = 0;
  HopMs hop;

  Millis duration_ms() const noexcept { return hop.frames_to_ms(n_frames); }
  friend bool operator==(const FrameSpan&, const FrameSpan&) = default;
};

/// Synthesized chunk as it travels on the wire: playback length plus text.
struct SynthChunkRef {
  Millis duration_ms = 0;
  std::string phrase_text;
  friend bool operator==(const SynthChunkRef&, const SynthChunkRef&) = default;
};

enum class Channel : std::uint8_t { Source, ISR, IMT, ITTS };
inline constexpr int kChannelCount = 4;

std::string_view channel_name(Channel c) noexcept;  // SRC, ISR, IMT, ITTS
std::optional<Channel> channel_from_name(std::string_view name) noexcept;

struct Provenance {
  std::int64_t segment_id = 0;
  Millis first_input_ms = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

using Payload = std::variant<Token, FrameSpan, SynthChunkRef>;

struct TimedEvent {
  Channel channel = Channel::Source;
  std::int64_t seq = 0;
  Millis emit_ms = 0;
  Payload payload = Token::end_seq();
  Provenance provenance;

  const Token* token() const noexcept { return std::get_if<Token>(&payload); }
  const FrameSpan* frames() const noexcept { return std::get_if<FrameSpan>(&payload); }
  const SynthChunkRef* chunk() const noexcept { return std::get_if<SynthChunkRef>(&payload); }

  bool is_kind(TokenKind kind) const noexcept {
    const Token* t = token();
    return t != nullptr && t->kind() == kind;
  }
  bool is_end_seq() const noexcept { return is_kind(TokenKind::EndSeq); }
  /// Regular tokens and synthesized chunks: what a listener would perceive.
  bool is_content_output() const noexcept {
    return is_kind(TokenKind::Regular) || chunk() != nullptr;
  }
  /// Time at which the event's content is fully available downstream. For a
  /// frame block that is the end of the block, otherwise emit_ms.
  Millis available_ms() const noexcept;

  friend bool operator==(const TimedEvent&, const TimedEvent&) = default;
};

/// Source-side view of one frame block, with its index inside the segment.
struct FrameBlock {
  std::int64_t segment_id = 0;
  std::int64_t block_index = 0;
  std::int64_t n_frames = 0;
  HopMs hop;
  Millis start_ms = 0;

  Millis duration_ms() const noexcept { return hop.frames_to_ms(n_frames); }
  friend bool operator==(const FrameBlock&, const FrameBlock&) = default;
};

/// Hands out dense per-channel sequence numbers.
class EventFactory {
 public:
  explicit EventFactory(Channel channel) : channel_(channel) {}

  TimedEvent make(Millis emit_ms, Payload payload, Provenance provenance) {
    return TimedEvent{channel_, next_seq_++, emit_ms, std::move(payload), provenance};
  }
  Channel channel() const noexcept { return channel_; }
  std::int64_t next_seq() const noexcept { return next_seq_; }

 private:
  Channel channel_;
  std::int64_t next_seq_ = 0;
};

}  // namespace s2st
