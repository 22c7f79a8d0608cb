#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "s2st/block_emitter.hpp"
#include "s2st/chart.hpp"
#include "s2st/duration.hpp"
#include "s2st/stage.hpp"
#include "s2st/transducer.hpp"

namespace s2st::cli {

enum class TranslatorPolicy { WaitK, PassThrough };

/// Everything needed to build the SRC -> ISR -> IMT -> ITTS chain.
struct PipelineConfig {
  std::filesystem::path base_dir;  // relative paths resolve against this

  // source
  BlockEmitterConfig isr;  // block_frames and hop also shape the source
  Millis gap_ms = 0;       // silence between consecutive segments

  // isr
  std::optional<std::filesystem::path> transcript;

  // imt
  TranslatorPolicy imt_policy = TranslatorPolicy::WaitK;
  int k = 5;
  std::optional<std::filesystem::path> imt_table;
  UnmappedPolicy imt_unmapped = UnmappedPolicy::Passthrough;
  ComputeModel imt_compute;

  // itts
  std::optional<std::filesystem::path> itts_rules;
  std::optional<std::filesystem::path> itts_durations;
  Millis mora_ms = kDefaultMoraMs;
  ComputeModel itts_compute;

  // pipe mode: model milliseconds per wall millisecond; 0 replays as fast as
  // possible and stamps model time only
  double pipe_speed = 1.0;

  ChartOptions chart;
};

/// Parses `section.key = value` lines ('#' comments, blank lines allowed).
/// Unknown or repeated keys, bad values and missing referenced files throw
/// ConfigError naming the key.
PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

/// The keys and values of a config file, in order, for tooling.
std::map<std::string, std::string> parse_config_entries(const std::string& text);

}  // namespace s2st::cli
