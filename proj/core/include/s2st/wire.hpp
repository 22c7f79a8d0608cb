#pragma once

// Line-oriented wire protocol shared by pipe-connected stages and event logs:
//
//   <channel>\t<seq>\t<emit_ms>\t<segment_id>\t<first_input_ms>\t<kind>\t<payload...>\n
//
// channel is SRC|ISR|IMT|ITTS, kind is tok|bos|blk|eos|frm|chk. Token kinds
// carry the token text; frm carries `<n_frames>\t<hop_ms>`; chk carries
// `<duration_ms>\t<phrase_text>`. Integers are canonical decimal (no sign, no
// leading zeros) so every accepted line re-serializes to itself.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "s2st/event.hpp"

namespace s2st {

/// One LF-terminated line. Precondition: `ev` satisfies the event invariants.
std::string serialize_event(const TimedEvent& ev);

/// Strict inverse of serialize_event. A single trailing LF is accepted.
/// Throws ParseError.
TimedEvent parse_event(std::string_view line);

/// Reads an event log; blank lines are not allowed. Errors carry the 1-based
/// line number in their message.
std::vector<TimedEvent> read_event_log(std::istream& in);
std::vector<TimedEvent> read_event_log_file(const std::string& path);

void write_event_log(std::ostream& out, const std::vector<TimedEvent>& events);
void write_event_log_file(const std::string& path, const std::vector<TimedEvent>& events);

}  // namespace s2st
