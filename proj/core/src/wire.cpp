#include "s2st/wire.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "s2st/error.hpp"

namespace s2st {
namespace {

constexpr const char* kHeaderFields[] = {"channel", "seq", "emit_ms", "segment_id",
                                         "first_input_ms", "kind"};

std::string_view kind_tag(const TimedEvent& ev) {
  if (const Token* t = ev.token()) {
    switch (t->kind()) {
      case TokenKind::Regular: return "tok";
      case TokenKind::BeginSeq: return "bos";
      case TokenKind::EndBlock: return "blk";
      case TokenKind::EndSeq: return "eos";
    }
  }
  if (ev.frames() != nullptr) return "frm";
  return "chk";
}

struct Field {
  std::string_view text;
  std::size_t offset;
};

std::vector<Field> split_tabs(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back({line.substr(start), start});
      break;
    }
    out.push_back({line.substr(start, tab - start), start});
    start = tab + 1;
  }
  return out;
}

std::int64_t parse_canonical_uint(const Field& f, const char* name) {
  const std::string_view s = f.text;
  const bool bad_shape = s.empty() || (s.size() > 1 && s.front() == '0') || s.front() < '0' ||
                         s.front() > '9';
  std::int64_t value = 0;
  if (!bad_shape) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return value;
  }
  throw ParseError(ParseError::Kind::MalformedLine, name, f.offset,
                   "expected non-negative integer, got '" + std::string(s) + "'");
}

}  // namespace

std::string serialize_event(const TimedEvent& ev) {
  std::string out;
  out.reserve(64);
  out += channel_name(ev.channel);
  out += '\t';
  out += std::to_string(ev.seq);
  out += '\t';
  out += std::to_string(ev.emit_ms);
  out += '\t';
  out += std::to_string(ev.provenance.segment_id);
  out += '\t';
  out += std::to_string(ev.provenance.first_input_ms);
  out += '\t';
  out += kind_tag(ev);
  out += '\t';
  if (const Token* t = ev.token()) {
    out += t->text();
  } else if (const FrameSpan* f = ev.frames()) {
    out += std::to_string(f->n_frames);
    out += '\t';
    out += f->hop.to_string();
  } else {
    const SynthChunkRef& c = *ev.chunk();
    out += std::to_string(c.duration_ms);
    out += '\t';
    out += c.phrase_text;
  }
  out += '\n';
  return out;
}

TimedEvent parse_event(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  const std::vector<Field> fields = split_tabs(line);

  auto need = [&](std::size_t index, const char* name) -> const Field& {
    if (index >= fields.size()) {
      throw ParseError(ParseError::Kind::MalformedLine, name, line.size(),
                       "line has only " + std::to_string(fields.size()) + " fields");
    }
    return fields[index];
  };

  TimedEvent ev;
  const Field& ch = need(0, kHeaderFields[0]);
  const auto channel = channel_from_name(ch.text);
  if (!channel) {
    throw ParseError(ParseError::Kind::UnknownChannel, "channel", ch.offset,
                     "'" + std::string(ch.text) + "'");
  }
  ev.channel = *channel;
  ev.seq = parse_canonical_uint(need(1, kHeaderFields[1]), kHeaderFields[1]);
  ev.emit_ms = parse_canonical_uint(need(2, kHeaderFields[2]), kHeaderFields[2]);
  ev.provenance.segment_id = parse_canonical_uint(need(3, kHeaderFields[3]), kHeaderFields[3]);
  ev.provenance.first_input_ms =
      parse_canonical_uint(need(4, kHeaderFields[4]), kHeaderFields[4]);

  const Field& kind = need(5, kHeaderFields[5]);
  std::size_t expected = 0;
  if (kind.text == "tok" || kind.text == "bos" || kind.text == "blk" || kind.text == "eos") {
    expected = 7;
    const Field& text = need(6, "text");
    TokenKind tk = TokenKind::Regular;
    if (kind.text == "bos") tk = TokenKind::BeginSeq;
    if (kind.text == "blk") tk = TokenKind::EndBlock;
    if (kind.text == "eos") tk = TokenKind::EndSeq;
    if (tk == TokenKind::Regular) {
      if (!is_valid_token_text(text.text) || text.text == kBeginSeqText ||
          text.text == kEndBlockText || text.text == kEndSeqText) {
        throw ParseError(ParseError::Kind::MalformedLine, "text", text.offset,
                         "invalid regular token text");
      }
      ev.payload = Token::regular(std::string(text.text));
    } else {
      if (text.text != canonical_text(tk)) {
        throw ParseError(ParseError::Kind::MalformedLine, "text", text.offset,
                         "special token must read " + std::string(canonical_text(tk)));
      }
      if (tk == TokenKind::BeginSeq) ev.payload = Token::begin_seq();
      if (tk == TokenKind::EndBlock) ev.payload = Token::end_block();
      if (tk == TokenKind::EndSeq) ev.payload = Token::end_seq();
    }
  } else if (kind.text == "frm") {
    expected = 8;
    FrameSpan span;
    const Field& n = need(6, "n_frames");
    span.n_frames = parse_canonical_uint(n, "n_frames");
    if (span.n_frames == 0) {
      throw ParseError(ParseError::Kind::MalformedLine, "n_frames", n.offset, "must be positive");
    }
    const Field& hop = need(7, "hop_ms");
    const auto parsed = HopMs::parse(hop.text);
    if (!parsed || parsed->scaled() <= 0) {
      throw ParseError(ParseError::Kind::MalformedLine, "hop_ms", hop.offset,
                       "expected positive decimal with at most 4 fractional digits");
    }
    span.hop = *parsed;
    ev.payload = span;
  } else if (kind.text == "chk") {
    expected = 8;
    SynthChunkRef chunk;
    const Field& dur = need(6, "duration_ms");
    chunk.duration_ms = parse_canonical_uint(dur, "duration_ms");
    if (chunk.duration_ms == 0) {
      throw ParseError(ParseError::Kind::MalformedLine, "duration_ms", dur.offset,
                       "must be positive");
    }
    const Field& text = need(7, "phrase_text");
    if (!is_valid_token_text(text.text)) {
      throw ParseError(ParseError::Kind::MalformedLine, "phrase_text", text.offset,
                       "invalid phrase text");
    }
    chunk.phrase_text = std::string(text.text);
    ev.payload = std::move(chunk);
  } else {
    throw ParseError(ParseError::Kind::UnknownPayloadKind, "kind", kind.offset,
                     "'" + std::string(kind.text) + "'");
  }

  if (fields.size() != expected) {
    throw ParseError(ParseError::Kind::MalformedLine, "trailing", fields[expected].offset,
                     "unexpected extra field");
  }
  return ev;
}

std::vector<TimedEvent> read_event_log(std::istream& in) {
  std::vector<TimedEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      events.push_back(parse_event(line));
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.field(), e.offset(),
                       "line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return events;
}

std::vector<TimedEvent> read_event_log_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open event log " + path);
  return read_event_log(in);
}

void write_event_log(std::ostream& out, const std::vector<TimedEvent>& events) {
  for (const TimedEvent& ev : events) out << serialize_event(ev);
}

void write_event_log_file(const std::string& path, const std::vector<TimedEvent>& events) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write event log " + path);
  write_event_log(out, events);
}

}  // namespace s2st
