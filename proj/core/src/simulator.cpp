#include "s2st/simulator.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "s2st/error.hpp"
#include "s2st/validate.hpp"

namespace s2st {
namespace {

struct Delivery {
  Millis time;
  std::size_t stage;  // index of the receiving stage
  std::int64_t order; // FIFO position on the link
  TimedEvent event;

  bool operator>(const Delivery& o) const {
    return std::tie(time, stage, order) > std::tie(o.time, o.stage, o.order);
  }
};

}  // namespace

Simulator::Simulator(std::vector<std::unique_ptr<Stage>> chain) : chain_(std::move(chain)) {}

SimulationResult Simulator::run(const std::vector<TimedEvent>& source) {
  if (const ValidationReport report = validate_stream(source); !report.ok()) {
    throw MalformedInputError("source stream failed validation:\n" + report.to_string());
  }
  SimulationResult result;
  result.logs[static_cast<int>(Channel::Source)] = source;

  std::priority_queue<Delivery, std::vector<Delivery>, std::greater<>> queue;
  std::vector<Millis> link_time(chain_.size(), 0);
  std::vector<std::int64_t> link_order(chain_.size(), 0);

  auto schedule = [&](std::size_t stage, const TimedEvent& ev) {
    if (stage >= chain_.size()) return;
    const Millis t = std::max(ev.available_ms(), link_time[stage]);
    link_time[stage] = t;
    queue.push(Delivery{t, stage, link_order[stage]++, ev});
  };

  for (const TimedEvent& ev : source) schedule(0, ev);

  while (!queue.empty()) {
    Delivery d = queue.top();
    queue.pop();
    clock_.advance_to(std::max(clock_.now_ms(), d.time));
    Stage& stage = *chain_[d.stage];
    for (TimedEvent& out : stage.push(d.event, clock_.now_ms())) {
      schedule(d.stage + 1, out);
      result.logs[static_cast<int>(stage.output_channel())].push_back(std::move(out));
    }
  }
  for (auto& stage : chain_) stage->finish();

  for (const auto& log : result.logs) {
    if (!log.empty()) result.end_ms = std::max(result.end_ms, log.back().emit_ms);
  }
  return result;
}

}  // namespace s2st
