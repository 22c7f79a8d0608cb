#include "s2st/clock.hpp"

#include <stdexcept>
#include <string>

namespace s2st {

std::int64_t Clock::unix_now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

Millis Clock::now_ms() const {
  if (mode_ == Mode::Virtual) return now_;
  const Millis elapsed = unix_now_ms() - epoch_;
  return elapsed < 0 ? 0 : elapsed;
}

void Clock::advance_to(Millis t) {
  if (mode_ != Mode::Virtual) throw std::logic_error("advance_to on a wall clock");
  if (t < now_) {
    throw std::logic_error("virtual clock cannot go back from " + std::to_string(now_) + " to " +
                           std::to_string(t));
  }
  now_ = t;
}

}  // namespace s2st
