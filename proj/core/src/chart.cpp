#include "s2st/chart.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace s2st {
namespace {

constexpr std::size_t kLabelWidth = 6;

std::string fit(const std::string& text, std::size_t width) {
  if (text.size() <= width) return text + std::string(width - text.size(), ' ');
  if (width == 0) return {};
  return text.substr(0, width - 1) + "~";
}

}  // namespace

std::string render_alignment_chart(std::span<const AlignedUnit> units, const ChannelLogs& logs,
                                   const ChartOptions& options) {
  if (options.block_ms <= 0 || options.col_width == 0) {
    throw std::invalid_argument("chart block_ms and col_width must be positive");
  }
  std::ostringstream os;
  os << "# alignment chart: block_ms = " << options.block_ms
     << ", col_width = " << options.col_width << '\n';

  constexpr Channel kRows[] = {Channel::Source, Channel::ISR, Channel::IMT, Channel::ITTS};
  bool first = true;
  for (const AlignedUnit& unit : units) {
    // cells[row][column] -> space-joined labels
    std::array<std::map<std::int64_t, std::string>, kChannelCount> cells;
    std::int64_t n_cols = 1;
    for (std::size_t r = 0; r < std::size(kRows); ++r) {
      std::int64_t block_index = 0;
      for (const TimedEvent& ev : logs.of(kRows[r])) {
        if (ev.provenance.segment_id != unit.segment_id) continue;
        std::string label;
        if (ev.frames() != nullptr) {
          label = "#" + std::to_string(block_index++);
        } else if (const SynthChunkRef* c = ev.chunk()) {
          label = c->phrase_text;
        } else if (ev.is_kind(TokenKind::Regular)) {
          label = ev.token()->text();
        } else {
          continue;
        }
        const std::int64_t col =
            std::max<Millis>(0, ev.emit_ms - unit.source_start_ms) / options.block_ms;
        std::string& cell = cells[r][col];
        if (!cell.empty()) cell += ' ';
        cell += label;
        n_cols = std::max(n_cols, col + 1);
      }
    }

    const std::size_t row_width = kLabelWidth + static_cast<std::size_t>(n_cols) * (options.col_width + 1);
    if (!first) os << std::string(row_width, '-') << '\n';
    first = false;

    os << "segment " << unit.segment_id << "  source_start_ms = " << unit.source_start_ms << '\n';
    os << std::string(kLabelWidth, ' ');
    for (std::int64_t c = 0; c < n_cols; ++c) os << '|' << fit(std::to_string(c), options.col_width);
    os << '\n';
    for (std::size_t r = 0; r < std::size(kRows); ++r) {
      os << fit(std::string(channel_name(kRows[r])), kLabelWidth);
      for (std::int64_t c = 0; c < n_cols; ++c) {
        auto it = cells[r].find(c);
        os << '|' << fit(it == cells[r].end() ? std::string() : it->second, options.col_width);
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace s2st
