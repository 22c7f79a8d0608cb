#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "s2st/isr_stage.hpp"
#include "s2st/latency.hpp"
#include "s2st/simulator.hpp"

namespace s2st::cli {

/// Source events plus the transcript the scripted recognizer replays.
struct PipelineInput {
  std::vector<TimedEvent> source;
  Transcript transcript;
};

/// Lays segments out back to back (separated by gap_ms), one block of
/// block_frames frames per transcript block.
std::vector<TimedEvent> make_source_events(const Transcript& transcript, const PipelineConfig& cfg);

/// `input` is either a SRC event log (the transcript then comes from
/// isr.transcript) or a transcript to be laid out into blocks.
PipelineInput load_input(const PipelineConfig& cfg, const std::filesystem::path& input);

/// Builds the stage that produces `channel` (ISR, IMT or ITTS).
std::unique_ptr<Stage> make_stage(Channel channel, const PipelineConfig& cfg,
                                  const Transcript& transcript);
std::vector<std::unique_ptr<Stage>> make_chain(const PipelineConfig& cfg,
                                               const Transcript& transcript);

SimulationResult run_simulation(const PipelineConfig& cfg, const PipelineInput& input);

ChannelLogs to_channel_logs(const SimulationResult& result);

struct Analysis {
  std::vector<AlignedUnit> units;
  LatencyReport report;
  std::string chart;
  std::vector<std::string> warnings;  // e.g. segments missing a channel
  std::vector<std::string> errors;    // units breaking source <= ISR <= IMT <= ITTS
};

/// Alignment, EVS, speaking latency and chart. Throws EmptyInputError when
/// the logs are empty or no segment reached every channel.
Analysis analyze(const ChannelLogs& logs, const ChartOptions& chart);

/// File name of a channel's log inside an output directory, e.g. "IMT.log".
std::string log_file_name(Channel channel);

void write_logs(const std::filesystem::path& dir, const ChannelLogs& logs);

}  // namespace s2st::cli
