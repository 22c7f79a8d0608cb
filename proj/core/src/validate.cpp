#include "s2st/validate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace s2st {

const char* to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::ChannelMismatch: return "ChannelMismatch";
    case ViolationKind::SeqGap: return "SeqGap";
    case ViolationKind::MonotonicityViolation: return "MonotonicityViolation";
    case ViolationKind::CausalityViolation: return "CausalityViolation";
    case ViolationKind::UnterminatedSegment: return "UnterminatedSegment";
    case ViolationKind::MisplacedBeginSeq: return "MisplacedBeginSeq";
    case ViolationKind::SegmentMixing: return "SegmentMixing";
    case ViolationKind::SegmentReopened: return "SegmentReopened";
  }
  return "?";
}

std::size_t ValidationReport::count(ViolationKind kind) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << s2st::to_string(v.kind) << " at seq " << v.seq << ": " << v.detail << '\n';
  }
  return os.str();
}

ValidationReport validate_stream(std::span<const TimedEvent> events) {
  ValidationReport report;
  if (events.empty()) return report;
  auto add = [&](ViolationKind kind, std::int64_t seq, std::string detail) {
    report.violations.push_back({kind, seq, std::move(detail)});
  };

  const Channel channel = events.front().channel;
  std::set<std::int64_t> closed;
  bool open = false;
  bool has_content = false;
  std::int64_t open_segment = 0;

  auto open_run = [&](const TimedEvent& ev) {
    open = true;
    has_content = false;
    open_segment = ev.provenance.segment_id;
    if (closed.contains(open_segment)) {
      add(ViolationKind::SegmentReopened, ev.seq,
          "segment " + std::to_string(open_segment) + " already terminated");
    }
  };

  for (std::size_t i = 0; i < events.size(); ++i) {
    const TimedEvent& ev = events[i];
    if (ev.channel != channel) {
      add(ViolationKind::ChannelMismatch, ev.seq,
          "expected " + std::string(channel_name(channel)) + ", got " +
              std::string(channel_name(ev.channel)));
    }
    const std::int64_t expected_seq = i == 0 ? 0 : events[i - 1].seq + 1;
    if (ev.seq != expected_seq) {
      add(ViolationKind::SeqGap, ev.seq, "expected seq " + std::to_string(expected_seq));
    }
    if (i > 0 && ev.emit_ms < events[i - 1].emit_ms) {
      add(ViolationKind::MonotonicityViolation, ev.seq,
          "emit_ms " + std::to_string(ev.emit_ms) + " < previous " +
              std::to_string(events[i - 1].emit_ms));
    }
    if (ev.emit_ms < ev.provenance.first_input_ms) {
      add(ViolationKind::CausalityViolation, ev.seq,
          "emit_ms " + std::to_string(ev.emit_ms) + " < first_input_ms " +
              std::to_string(ev.provenance.first_input_ms));
    }

    if (ev.is_kind(TokenKind::BeginSeq)) {
      if (open && has_content) {
        add(ViolationKind::MisplacedBeginSeq, ev.seq, "BeginSeq inside an open segment");
      }
      if (!open) open_run(ev);
      continue;
    }
    if (!open) {
      open_run(ev);
    } else if (ev.provenance.segment_id != open_segment) {
      add(ViolationKind::SegmentMixing, ev.seq,
          "segment " + std::to_string(ev.provenance.segment_id) + " inside open segment " +
              std::to_string(open_segment));
    }
    if (ev.is_end_seq()) {
      closed.insert(open_segment);
      open = false;
    } else {
      has_content = true;
    }
  }
  if (open) {
    add(ViolationKind::UnterminatedSegment, events.back().seq,
        "segment " + std::to_string(open_segment) + " has no EndSeq");
  }
  return report;
}

}  // namespace s2st
