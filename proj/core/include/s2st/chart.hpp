#pragma once

#include <span>
#include <string>

#include "s2st/latency.hpp"

namespace s2st {

struct ChartOptions {
  Millis block_ms = 550;
  std::size_t col_width = 10;
};

/// Text chart of one run, one grid per aligned unit: a column per block of
/// `block_ms` counted from the segment's source start, and a row per channel
/// with each output placed in the column of its emit time. Source blocks are
/// drawn as `#<index>`. Cells longer than the column are cut and end in '~'.
/// Grids are separated by a dashed divider line. Byte-identical for identical
/// input.
std::string render_alignment_chart(std::span<const AlignedUnit> units, const ChannelLogs& logs,
                                   const ChartOptions& options = {});

}  // namespace s2st
