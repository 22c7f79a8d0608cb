#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace s2st {

/// Decision of a stage policy. Stall means no progress is possible until more
/// input arrives; a driver whose input is exhausted treats it as a deadlock.
enum class Action : std::uint8_t { Read, Write, Flush, Stall };

char action_letter(Action a) noexcept;  // R, W, F, -

/// Counters of the wait-k read/write policy. Only Regular source tokens count
/// as reads; block and sequence markers are transparent.
struct WaitKState {
  int k = 1;
  std::int64_t n_read = 0;
  std::int64_t n_written = 0;
  bool source_done = false;

  /// Output number n_written + 1 may be written: either the source is
  /// exhausted (tail writes are unconstrained) or k more reads than writes.
  bool write_permitted() const noexcept { return source_done || n_read >= n_written + k; }
};

/// Read while input exists and writing is not allowed; write a pending output
/// as soon as it is allowed; flush once the source is done and nothing is
/// pending. Returns Stall when input is unavailable and nothing can be written.
Action wait_k_next_action(const WaitKState& state, bool input_available, bool output_pending);

/// The full Read/Write sequence for a source of J tokens and a target of I
/// tokens: write i is preceded by exactly min(i + k - 1, J) reads, and any
/// reads not needed by a write come last. Throws std::invalid_argument unless
/// J, I, k >= 1.
std::vector<Action> wait_k_schedule(std::int64_t source_len, std::int64_t target_len, int k);

std::string to_string(const std::vector<Action>& actions);

}  // namespace s2st
