#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "s2st/event.hpp"

namespace s2st::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

enum class RunMode { Sim, Pipe };

struct RunOptions {
  std::filesystem::path config;
  std::filesystem::path input;
  std::filesystem::path out_dir;
  RunMode mode = RunMode::Sim;
  std::optional<double> speed;          // overrides pipe.speed
  std::filesystem::path self_exe;       // binary to spawn for pipe stages
};

/// Runs the pipeline, writes SRC/ISR/IMT/ITTS logs, report.txt and chart.txt
/// into out_dir, and prints the report.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

int cmd_schedule(std::int64_t source_len, std::int64_t target_len, std::int64_t k,
                 std::ostream& out, std::ostream& err);

enum class ScoreMode { Wer, Cer, Bleu };

/// Line-aligned hypothesis and reference files, scored at corpus level.
int cmd_score(ScoreMode mode, const std::filesystem::path& hyp, const std::filesystem::path& ref,
              std::ostream& out, std::ostream& err);

/// Validates the logs in `log_dir`, prints the latency report and writes
/// chart.txt next to them. `block_ms` defaults to the first source block.
int cmd_report(const std::filesystem::path& log_dir, std::optional<Millis> block_ms,
               std::ostream& out, std::ostream& err);

struct StageOptions {
  Channel channel = Channel::ISR;
  std::filesystem::path config;
  std::optional<std::filesystem::path> input;  // needed by ISR for the transcript
  std::filesystem::path log;
  std::int64_t epoch_unix_ms = 0;
  double speed = 0.0;
};

/// One pipe-mode stage process: wire events in on `in`, wire events out on
/// `out` (flushed per line) and in the log file.
int cmd_stage(const StageOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace s2st::cli
