#include "cli/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "s2st/accent_phrase.hpp"
#include "s2st/error.hpp"
#include "s2st/synthesis_stage.hpp"
#include "s2st/wire.hpp"

namespace s2st::cli {

std::vector<TimedEvent> make_source_events(const Transcript& transcript,
                                           const PipelineConfig& cfg) {
  std::vector<TimedEvent> out;
  EventFactory events(Channel::Source);
  Millis start = 0;
  for (std::size_t s = 0; s < transcript.size(); ++s) {
    const auto segment_id = static_cast<std::int64_t>(s);
    const auto total_frames = static_cast<std::int64_t>(transcript[s].size()) * cfg.isr.block_frames;
    for (const FrameBlock& b : make_frame_blocks(segment_id, start, total_frames, cfg.isr)) {
      out.push_back(events.make(b.start_ms, FrameSpan{b.n_frames, b.hop}, {segment_id, b.start_ms}));
    }
    const Millis end = start + cfg.isr.hop.frames_to_ms(total_frames);
    out.push_back(events.make(end, Token::end_seq(), {segment_id, end}));
    start = end + cfg.gap_ms;
  }
  return out;
}

PipelineInput load_input(const PipelineConfig& cfg, const std::filesystem::path& input) {
  std::ifstream in(input);
  if (!in) throw Error("cannot open input " + input.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  bool looks_like_log = false;
  {
    std::istringstream lines(text);
    std::string first;
    while (std::getline(lines, first) && first.empty()) {
    }
    try {
      looks_like_log = !first.empty() && parse_event(first).channel == Channel::Source;
    } catch (const ParseError&) {
      looks_like_log = false;
    }
  }

  PipelineInput out;
  if (looks_like_log) {
    std::istringstream log(text);
    out.source = read_event_log(log);
    if (!cfg.transcript) {
      throw ConfigError("isr.transcript", "required when the input is a SRC event log");
    }
    out.transcript = load_transcript(cfg.transcript->string());
  } else {
    out.transcript = parse_transcript(text);
    out.source = make_source_events(out.transcript, cfg);
  }
  return out;
}

std::unique_ptr<Stage> make_stage(Channel channel, const PipelineConfig& cfg,
                                  const Transcript& transcript) {
  switch (channel) {
    case Channel::ISR:
      return std::make_unique<IsrStage>("ISR", cfg.isr,
                                        std::make_unique<ScriptedRecognizer>(transcript));
    case Channel::IMT: {
      std::unique_ptr<Transducer> transducer;
      if (cfg.imt_table) {
        transducer = make_dictionary_transducer(load_dictionary_table(cfg.imt_table->string()),
                                                cfg.imt_unmapped);
      } else {
        transducer = std::make_unique<IdentityTransducer>();
      }
      std::unique_ptr<StagePolicy> policy;
      if (cfg.imt_policy == TranslatorPolicy::WaitK) {
        policy = std::make_unique<WaitKPolicy>(cfg.k);
      } else {
        policy = std::make_unique<PassThroughPolicy>();
      }
      return std::make_unique<TokenStage>("IMT", Channel::IMT, std::move(policy),
                                          std::move(transducer), cfg.imt_compute);
    }
    case Channel::ITTS: {
      BoundaryRules rules = cfg.itts_rules ? load_boundary_rules(cfg.itts_rules->string())
                                           : BoundaryRules{};
      std::shared_ptr<const DurationModel> model;
      if (cfg.itts_durations) {
        model = std::make_shared<TableDurationModel>(
            load_duration_table(cfg.itts_durations->string()));
      } else {
        model = std::make_shared<TableDurationModel>(TableDurationModel::uniform(cfg.mora_ms));
      }
      return std::make_unique<SynthesisStage>("ITTS", std::move(rules), std::move(model),
                                              cfg.itts_compute);
    }
    case Channel::Source:
      break;
  }
  throw std::invalid_argument("no stage produces the source channel");
}

std::vector<std::unique_ptr<Stage>> make_chain(const PipelineConfig& cfg,
                                               const Transcript& transcript) {
  std::vector<std::unique_ptr<Stage>> chain;
  chain.push_back(make_stage(Channel::ISR, cfg, transcript));
  chain.push_back(make_stage(Channel::IMT, cfg, transcript));
  chain.push_back(make_stage(Channel::ITTS, cfg, transcript));
  return chain;
}

SimulationResult run_simulation(const PipelineConfig& cfg, const PipelineInput& input) {
  Simulator sim(make_chain(cfg, input.transcript));
  return sim.run(input.source);
}

ChannelLogs to_channel_logs(const SimulationResult& result) {
  return ChannelLogs{result.log(Channel::Source), result.log(Channel::ISR),
                     result.log(Channel::IMT), result.log(Channel::ITTS)};
}

Analysis analyze(const ChannelLogs& logs, const ChartOptions& chart) {
  if (logs.empty()) throw EmptyInputError("no events in any log");
  Analysis a;
  a.units = align_outputs(logs);
  for (const AlignedUnit& u : a.units) {
    for (Channel c : u.missing_channels()) {
      a.warnings.push_back("segment " + std::to_string(u.segment_id) + " has no " +
                           std::string(channel_name(c)) + " output");
    }
    if (!u.cascade_ordered()) {
      a.errors.push_back("segment " + std::to_string(u.segment_id) +
                         " first outputs are not in cascade order");
    }
  }
  a.report = compute_evs(a.units);
  const std::vector<SynthChunk> chunks = chunks_from_log(logs.itts);
  add_speaking_latency(a.report, schedule_playback(chunks));
  a.chart = render_alignment_chart(a.units, logs, chart);
  return a;
}

std::string log_file_name(Channel channel) { return std::string(channel_name(channel)) + ".log"; }

void write_logs(const std::filesystem::path& dir, const ChannelLogs& logs) {
  std::filesystem::create_directories(dir);
  for (Channel c : {Channel::Source, Channel::ISR, Channel::IMT, Channel::ITTS}) {
    write_event_log_file((dir / log_file_name(c)).string(), logs.of(c));
  }
}

}  // namespace s2st::cli
