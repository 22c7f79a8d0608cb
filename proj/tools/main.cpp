#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "cli/commands.hpp"

namespace fs = std::filesystem;
using namespace s2st::cli;

namespace {

fs::path self_exe(const char* argv0) {
  std::error_code ec;
  fs::path p = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) return p;
  return fs::absolute(argv0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simultaneous speech-to-speech translation pipeline simulator"};
  app.require_subcommand(1);

  RunOptions run;
  std::string run_mode = "sim";
  std::optional<double> run_speed;
  auto* run_cmd = app.add_subcommand("run", "Run the SRC -> ISR -> IMT -> ITTS pipeline");
  run_cmd->add_option("--config", run.config, "Pipeline config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--input", run.input, "SRC event log or token transcript")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out_dir, "Output directory for logs and report")->required();
  run_cmd->add_option("--mode", run_mode, "sim (virtual time) or pipe (one process per stage)")
      ->check(CLI::IsMember({"sim", "pipe"}));
  run_cmd->add_option("--speed", run_speed, "Pipe mode: model ms per wall ms, 0 = as fast as possible");

  std::int64_t j = 0, i = 0, k = 0;
  auto* sched_cmd = app.add_subcommand("schedule", "Print the wait-k action string");
  sched_cmd->add_option("J", j, "Source length")->required();
  sched_cmd->add_option("I", i, "Target length")->required();
  sched_cmd->add_option("k", k, "Wait-k delay")->required();

  std::string score_mode;
  fs::path hyp, ref;
  auto* score_cmd = app.add_subcommand("score", "Score hypotheses against references");
  score_cmd->add_option("--mode", score_mode, "wer, cer or bleu")->required()
      ->check(CLI::IsMember({"wer", "cer", "bleu"}));
  score_cmd->add_option("hyp", hyp, "Hypothesis file, one segment per line")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("ref", ref, "Reference file, one segment per line")->required()->check(CLI::ExistingFile);

  fs::path log_dir;
  std::optional<s2st::Millis> block_ms;
  auto* report_cmd = app.add_subcommand("report", "Latency report and alignment chart from logs");
  report_cmd->add_option("logdir", log_dir, "Directory holding SRC.log ISR.log IMT.log ITTS.log")->required();
  report_cmd->add_option("--block-ms", block_ms, "Chart column width in ms (default: first source block)");

  StageOptions stage;
  std::string stage_channel;
  std::optional<fs::path> stage_input;
  auto* stage_cmd = app.add_subcommand("stage", "Run one pipe-mode stage on stdin/stdout");
  stage_cmd->group("");  // internal
  stage_cmd->add_option("channel", stage_channel)->required()->check(CLI::IsMember({"ISR", "IMT", "ITTS"}));
  stage_cmd->add_option("--config", stage.config)->required();
  stage_cmd->add_option("--input", stage_input);
  stage_cmd->add_option("--log", stage.log)->required();
  stage_cmd->add_option("--epoch", stage.epoch_unix_ms)->required();
  stage_cmd->add_option("--speed", stage.speed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*run_cmd) {
    run.mode = run_mode == "pipe" ? RunMode::Pipe : RunMode::Sim;
    run.speed = run_speed;
    run.self_exe = self_exe(argv[0]);
    return cmd_run(run, std::cout, std::cerr);
  }
  if (*sched_cmd) return cmd_schedule(j, i, k, std::cout, std::cerr);
  if (*score_cmd) {
    const ScoreMode mode = score_mode == "wer" ? ScoreMode::Wer
                           : score_mode == "cer" ? ScoreMode::Cer
                                                 : ScoreMode::Bleu;
    return cmd_score(mode, hyp, ref, std::cout, std::cerr);
  }
  if (*report_cmd) return cmd_report(log_dir, block_ms, std::cout, std::cerr);
  if (*stage_cmd) {
    stage.channel = stage_channel == "ISR" ? s2st::Channel::ISR
                    : stage_channel == "IMT" ? s2st::Channel::IMT
                                             : s2st::Channel::ITTS;
    stage.input = stage_input;
    return cmd_stage(stage, std::cin, std::cout, std::cerr);
  }
  return kExitUsage;
}
