#include "s2st/latency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "s2st/error.hpp"

namespace s2st {

std::vector<Channel> AlignedUnit::missing_channels() const {
  std::vector<Channel> out;
  if (!isr_ms) out.push_back(Channel::ISR);
  if (!imt_ms) out.push_back(Channel::IMT);
  if (!itts_ms) out.push_back(Channel::ITTS);
  return out;
}

bool AlignedUnit::cascade_ordered() const noexcept {
  Millis floor = source_start_ms;
  for (const auto& t : {isr_ms, imt_ms, itts_ms}) {
    if (!t) continue;
    if (*t < floor) return false;
    floor = *t;
  }
  return true;
}

const std::vector<TimedEvent>& ChannelLogs::of(Channel c) const {
  switch (c) {
    case Channel::Source: return src;
    case Channel::ISR: return isr;
    case Channel::IMT: return imt;
    case Channel::ITTS: return itts;
  }
  return src;
}

std::vector<AlignedUnit> align_outputs(const ChannelLogs& logs) {
  std::vector<AlignedUnit> units;
  std::map<std::int64_t, std::size_t> index;
  for (const TimedEvent& ev : logs.src) {
    const std::int64_t id = ev.provenance.segment_id;
    auto [it, inserted] = index.emplace(id, units.size());
    if (inserted) {
      units.push_back(AlignedUnit{id, ev.provenance.first_input_ms, {}, {}, {}});
    } else {
      Millis& start = units[it->second].source_start_ms;
      start = std::min(start, ev.provenance.first_input_ms);
    }
  }

  auto fill = [&](Channel channel, std::optional<Millis> AlignedUnit::*field) {
    for (const TimedEvent& ev : logs.of(channel)) {
      auto it = index.find(ev.provenance.segment_id);
      if (it == index.end()) {
        throw InconsistentProvenanceError(
            std::string(channel_name(channel)) + " event seq " + std::to_string(ev.seq) +
            " references segment " + std::to_string(ev.provenance.segment_id) +
            " which is not in the source log");
      }
      if (!ev.is_content_output()) continue;
      auto& slot = units[it->second].*field;
      slot = slot ? std::min(*slot, ev.emit_ms) : ev.emit_ms;
    }
  };
  fill(Channel::ISR, &AlignedUnit::isr_ms);
  fill(Channel::IMT, &AlignedUnit::imt_ms);
  fill(Channel::ITTS, &AlignedUnit::itts_ms);
  return units;
}

namespace {

DelayStats stats_of(const std::vector<double>& xs) {
  DelayStats s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean_s = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean_s) * (x - s.mean_s);
    s.variance_s2 = ss / static_cast<double>(xs.size() - 1);
  }
  return s;
}

}  // namespace

LatencyReport compute_evs(std::span<const AlignedUnit> units) {
  std::vector<double> isr, imt, itts;
  for (const AlignedUnit& u : units) {
    if (!u.complete()) continue;
    isr.push_back(static_cast<double>(*u.isr_ms - u.source_start_ms) / 1000.0);
    imt.push_back(static_cast<double>(*u.imt_ms - u.source_start_ms) / 1000.0);
    itts.push_back(static_cast<double>(*u.itts_ms - u.source_start_ms) / 1000.0);
  }
  if (isr.empty()) throw EmptyInputError("no aligned unit has output on every channel");
  LatencyReport r;
  r.isr = stats_of(isr);
  r.imt = stats_of(imt);
  r.itts = stats_of(itts);
  r.units = isr.size();
  return r;
}

void add_speaking_latency(LatencyReport& report, const PlaybackPlan& plan) {
  report.speak_latency_mean_s = 0.0;
  report.speak_latency_max_s = 0.0;
  if (plan.entries.empty()) return;
  Millis sum = 0;
  Millis max = 0;
  for (const PlaybackEntry& e : plan.entries) {
    sum += e.speaking_latency_ms;
    max = std::max(max, e.speaking_latency_ms);
  }
  report.speak_latency_mean_s =
      static_cast<double>(sum) / static_cast<double>(plan.entries.size()) / 1000.0;
  report.speak_latency_max_s = static_cast<double>(max) / 1000.0;
}

std::string format_fixed3(double value) {
  // Round on the decimal value in thousandths so 1.6505 -> 1.651 regardless
  // of the binary representation's last bits.
  const double scaled = std::round(value * 1000.0 + (value >= 0 ? 1e-9 : -1e-9));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", scaled / 1000.0);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string LatencyReport::to_text() const {
  std::ostringstream os;
  os << "isr_delay_mean = " << format_fixed3(isr.mean_s) << '\n'
     << "isr_delay_var = " << format_fixed3(isr.variance_s2) << '\n'
     << "imt_delay_mean = " << format_fixed3(imt.mean_s) << '\n'
     << "imt_delay_var = " << format_fixed3(imt.variance_s2) << '\n'
     << "itts_delay_mean = " << format_fixed3(itts.mean_s) << '\n'
     << "itts_delay_var = " << format_fixed3(itts.variance_s2) << '\n'
     << "speak_latency_mean = " << format_fixed3(speak_latency_mean_s) << '\n'
     << "speak_latency_max = " << format_fixed3(speak_latency_max_s) << '\n'
     << "units = " << units << '\n';
  return os.str();
}

std::string units_to_tsv(std::span<const AlignedUnit> units) {
  std::ostringstream os;
  os << "segment_id\tsource_start_ms\tisr_ms\timt_ms\titts_ms\n";
  auto cell = [](const std::optional<Millis>& v) {
    return v ? std::to_string(*v) : std::string("-");
  };
  for (const AlignedUnit& u : units) {
    os << u.segment_id << '\t' << u.source_start_ms << '\t' << cell(u.isr_ms) << '\t'
       << cell(u.imt_ms) << '\t' << cell(u.itts_ms) << '\n';
  }
  return os.str();
}

}  // namespace s2st
