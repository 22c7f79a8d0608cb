#include "s2st/wait_k.hpp"

#include <algorithm>
#include <stdexcept>

namespace s2st {

char action_letter(Action a) noexcept {
  switch (a) {
    case Action::Read: return 'R';
    case Action::Write: return 'W';
    case Action::Flush: return 'F';
    case Action::Stall: return '-';
  }
  return '?';
}

Action wait_k_next_action(const WaitKState& state, bool input_available, bool output_pending) {
  if (output_pending && state.write_permitted()) return Action::Write;
  if (state.source_done) return output_pending ? Action::Write : Action::Flush;
  // Either writing is not yet allowed, or there is nothing to write: the only
  // way forward is more input.
  if (input_available) return Action::Read;
  return Action::Stall;
}

std::vector<Action> wait_k_schedule(std::int64_t source_len, std::int64_t target_len, int k) {
  if (source_len < 1 || target_len < 1 || k < 1) {
    throw std::invalid_argument("wait_k_schedule requires J, I, k >= 1");
  }
  std::vector<Action> out;
  out.reserve(static_cast<std::size_t>(source_len + target_len));
  std::int64_t reads = 0;
  for (std::int64_t i = 1; i <= target_len; ++i) {
    const std::int64_t needed = std::min<std::int64_t>(i + k - 1, source_len);
    for (; reads < needed; ++reads) out.push_back(Action::Read);
    out.push_back(Action::Write);
  }
  for (; reads < source_len; ++reads) out.push_back(Action::Read);
  return out;
}

std::string to_string(const std::vector<Action>& actions) {
  std::string s;
  s.reserve(actions.size());
  for (Action a : actions) s += action_letter(a);
  return s;
}

}  // namespace s2st
