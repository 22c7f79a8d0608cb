#include "cli/commands.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "cli/config.hpp"
#include "cli/pipeline.hpp"
#include "s2st/error.hpp"
#include "s2st/metrics.hpp"
#include "s2st/validate.hpp"
#include "s2st/wait_k.hpp"
#include "s2st/wire.hpp"

extern char** environ;

namespace s2st::cli {
namespace fs = std::filesystem;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const DeadlockError& e) {
    err << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitData;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > s.size()) return false;
    for (std::size_t j = 1; j < len; ++j) {
      if ((static_cast<unsigned char>(s[i + j]) >> 6) != 0x2) return false;
    }
    i += len;
  }
  return true;
}

std::vector<std::string> read_text_corpus(const fs::path& path) {
  std::vector<std::string> lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!valid_utf8(lines[i])) {
      throw MalformedInputError(path.string() + ":" + std::to_string(i + 1) + ": invalid UTF-8");
    }
  }
  return lines;
}

// Prints the report, writes report.txt and chart.txt. Returns the exit code.
int finish_analysis(const ChannelLogs& logs, const ChartOptions& chart, const fs::path& dir,
                    bool write_report, std::ostream& out, std::ostream& err) {
  const Analysis a = analyze(logs, chart);
  for (const std::string& w : a.warnings) err << "warning: " << w << '\n';
  const std::string report = a.report.to_text();
  if (write_report) write_text(dir / "report.txt", report);
  write_text(dir / "chart.txt", a.chart);
  out << report;
  if (!a.errors.empty()) {
    for (const std::string& e : a.errors) err << "error: " << e << '\n';
    return kExitData;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- pipe mode

struct Pipe {
  int read = -1;
  int write = -1;
};

Pipe make_pipe() {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw Error(std::string("pipe: ") + std::strerror(errno));
  return {fds[0], fds[1]};
}

void close_fd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

pid_t spawn_stage(const fs::path& exe, const std::vector<std::string>& args, int in_fd, int out_fd) {
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_fd, STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_fd, STDOUT_FILENO);

  std::vector<std::string> argv_store;
  argv_store.push_back(exe.string());
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid = 0;
  const int rc = posix_spawn(&pid, exe.c_str(), &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw Error("cannot spawn " + exe.string() + ": " + std::strerror(rc));
  return pid;
}

bool write_all(int fd, const std::string& data) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    done += static_cast<std::size_t>(n);
  }
  return true;
}

std::string format_speed(double speed) {
  std::ostringstream os;
  os.precision(17);
  os << speed;
  return os.str();
}

int run_pipe(const PipelineConfig& cfg, const RunOptions& opts, const PipelineInput& input,
             std::ostream& err) {
  if (opts.self_exe.empty()) throw Error("pipe mode needs the path of the s2st executable");
  std::signal(SIGPIPE, SIG_IGN);

  const std::int64_t epoch = Clock::unix_now_ms();
  const double speed = cfg.pipe_speed;
  const Channel stages[] = {Channel::ISR, Channel::IMT, Channel::ITTS};

  Pipe links[3];
  for (Pipe& p : links) p = make_pipe();
  int sink = ::open("/dev/null", O_WRONLY | O_CLOEXEC);
  if (sink < 0) throw Error("cannot open /dev/null");

  std::vector<pid_t> pids;
  for (int i = 0; i < 3; ++i) {
    std::vector<std::string> args = {
        "stage",  std::string(channel_name(stages[i])),
        "--config", fs::absolute(opts.config).string(),
        "--log", (opts.out_dir / log_file_name(stages[i])).string(),
        "--epoch", std::to_string(epoch),
        "--speed", format_speed(speed)};
    if (stages[i] == Channel::ISR) {
      args.push_back("--input");
      args.push_back(fs::absolute(opts.input).string());
    }
    const int out_fd = i + 1 < 3 ? links[i + 1].write : sink;
    pids.push_back(spawn_stage(opts.self_exe, args, links[i].read, out_fd));
  }
  for (int i = 0; i < 3; ++i) {
    close_fd(links[i].read);
    if (i > 0) close_fd(links[i].write);
  }
  close_fd(sink);

  // Feed the source at its availability times.
  for (const TimedEvent& ev : input.source) {
    if (speed > 0.0) {
      const auto due = std::chrono::system_clock::time_point(std::chrono::milliseconds(epoch)) +
                       std::chrono::duration<double, std::milli>(
                           static_cast<double>(ev.available_ms()) / speed);
      std::this_thread::sleep_until(
          std::chrono::time_point_cast<std::chrono::system_clock::duration>(due));
    }
    if (!write_all(links[0].write, serialize_event(ev))) break;
  }
  close_fd(links[0].write);

  int code = kExitOk;
  for (int i = 0; i < 3; ++i) {
    int status = 0;
    while (::waitpid(pids[i], &status, 0) < 0 && errno == EINTR) {
    }
    const bool ok = WIFEXITED(status) && WEXITSTATUS(status) == 0;
    if (!ok && code == kExitOk) {
      err << "stage " << channel_name(stages[i]) << " failed";
      if (WIFEXITED(status)) err << " with exit status " << WEXITSTATUS(status);
      if (WIFSIGNALED(status)) err << " on signal " << WTERMSIG(status);
      err << '\n';
      code = kExitData;
    }
  }
  return code;
}

ChannelLogs read_logs(const fs::path& dir, std::ostream& err, bool& ok) {
  ChannelLogs logs;
  ok = true;
  for (Channel c : {Channel::Source, Channel::ISR, Channel::IMT, Channel::ITTS}) {
    const fs::path path = dir / log_file_name(c);
    if (!fs::exists(path)) continue;
    std::vector<TimedEvent> events;
    try {
      events = read_event_log_file(path.string());
    } catch (const ParseError& e) {
      err << path.filename().string() << ": " << e.what() << '\n';
      ok = false;
      continue;
    }
    std::size_t foreign = 0;
    for (const TimedEvent& ev : events) foreign += ev.channel != c ? 1 : 0;
    if (foreign > 0) {
      err << path.filename().string() << ": " << foreign << " event(s) not on channel "
          << channel_name(c) << '\n';
      ok = false;
    }
    const ValidationReport report = validate_stream(events);
    if (!report.ok()) {
      err << path.filename().string() << ":\n" << report.to_string();
      ok = false;
    }
    switch (c) {
      case Channel::Source: logs.src = std::move(events); break;
      case Channel::ISR: logs.isr = std::move(events); break;
      case Channel::IMT: logs.imt = std::move(events); break;
      case Channel::ITTS: logs.itts = std::move(events); break;
    }
  }
  return logs;
}

}  // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    PipelineConfig cfg = load_config(opts.config);
    if (opts.speed) {
      if (*opts.speed < 0.0) throw ConfigError("pipe.speed", "must be >= 0");
      cfg.pipe_speed = *opts.speed;
    }
    const PipelineInput input = load_input(cfg, opts.input);
    if (const ValidationReport report = validate_stream(input.source); !report.ok()) {
      throw MalformedInputError("source stream failed validation:\n" + report.to_string());
    }
    fs::create_directories(opts.out_dir);

    ChannelLogs logs;
    if (opts.mode == RunMode::Sim) {
      logs = to_channel_logs(run_simulation(cfg, input));
      write_logs(opts.out_dir, logs);
    } else {
      write_event_log_file((opts.out_dir / log_file_name(Channel::Source)).string(), input.source);
      if (const int code = run_pipe(cfg, opts, input, err); code != kExitOk) return code;
      bool ok = true;
      logs = read_logs(opts.out_dir, err, ok);
      if (!ok) return kExitData;
    }
    return finish_analysis(logs, cfg.chart, opts.out_dir, true, out, err);
  });
}

int cmd_schedule(std::int64_t source_len, std::int64_t target_len, std::int64_t k,
                 std::ostream& out, std::ostream& err) {
  if (source_len < 1 || target_len < 1 || k < 1 || k > std::numeric_limits<int>::max()) {
    err << "schedule: J, I and k must be positive integers\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    out << to_string(wait_k_schedule(source_len, target_len, static_cast<int>(k))) << '\n';
    return kExitOk;
  });
}

int cmd_score(ScoreMode mode, const fs::path& hyp, const fs::path& ref, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<std::string> hyps = read_text_corpus(hyp);
    const std::vector<std::string> refs = read_text_corpus(ref);
    if (hyps.size() != refs.size()) {
      throw LengthMismatchError(hyp.string() + " has " + std::to_string(hyps.size()) +
                                " lines but " + ref.string() + " has " +
                                std::to_string(refs.size()));
    }
    switch (mode) {
      case ScoreMode::Wer:
      case ScoreMode::Cer: {
        const bool words = mode == ScoreMode::Wer;
        const metrics::ErrorRate r =
            words ? metrics::corpus_wer(hyps, refs) : metrics::corpus_cer(hyps, refs);
        out << (words ? "wer" : "cer") << " = " << format_fixed3(r.rate()) << '\n'
            << "edits = " << r.edits << '\n'
            << (words ? "ref_words" : "ref_chars") << " = " << r.ref_length << '\n';
        break;
      }
      case ScoreMode::Bleu: {
        std::vector<metrics::TokenSeq> h, r;
        for (const std::string& line : hyps) h.push_back(metrics::wer_tokens(line));
        for (const std::string& line : refs) r.push_back(metrics::wer_tokens(line));
        const metrics::ScoreReport s = metrics::bleu(h, r, 4);
        for (std::size_t n = 0; n < s.bleu.size(); ++n) {
          out << "bleu" << n + 1 << " = " << format_fixed3(s.bleu[n]) << '\n';
        }
        out << "brevity_penalty = " << format_fixed3(s.brevity_penalty) << '\n'
            << "length_ratio = " << format_fixed3(s.length_ratio) << '\n'
            << "hyp_length = " << s.stats.hyp_length << '\n'
            << "ref_length = " << s.stats.ref_length << '\n';
        break;
      }
    }
    return kExitOk;
  });
}

int cmd_report(const fs::path& log_dir, std::optional<Millis> block_ms, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    if (!fs::is_directory(log_dir)) throw Error("not a directory: " + log_dir.string());
    bool ok = true;
    const ChannelLogs logs = read_logs(log_dir, err, ok);
    if (!ok) return kExitData;
    if (logs.empty()) throw EmptyInputError("no events in " + log_dir.string());

    ChartOptions chart;
    if (block_ms) {
      if (*block_ms < 1) throw Error("--block-ms must be positive");
      chart.block_ms = *block_ms;
    } else {
      for (const TimedEvent& ev : logs.src) {
        if (const FrameSpan* f = ev.frames()) {
          chart.block_ms = std::max<Millis>(1, f->hop.frames_to_ms(f->n_frames));
          break;
        }
      }
    }
    return finish_analysis(logs, chart, log_dir, false, out, err);
  });
}

int cmd_stage(const StageOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  std::string stage_name(channel_name(opts.channel));
  try {
    const PipelineConfig cfg = load_config(opts.config);
    Transcript transcript;
    if (opts.channel == Channel::ISR) {
      if (!opts.input) throw Error("the ISR stage needs --input");
      transcript = load_input(cfg, *opts.input).transcript;
    }
    std::unique_ptr<Stage> stage = make_stage(opts.channel, cfg, transcript);
    std::ofstream log(opts.log, std::ios::binary);
    if (!log) throw Error("cannot write " + opts.log.string());

    Millis now = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      TimedEvent ev;
      try {
        ev = parse_event(line);
      } catch (const ParseError& e) {
        throw MalformedInputError("stdin line " + std::to_string(line_no) + ": " + e.what());
      }
      Millis wall = 0;
      if (opts.speed > 0.0) {
        wall = static_cast<Millis>(static_cast<double>(Clock::unix_now_ms() - opts.epoch_unix_ms) *
                                   opts.speed);
      }
      now = std::max({now, ev.available_ms(), wall});
      for (const TimedEvent& produced : stage->push(ev, now)) {
        const std::string text = serialize_event(produced);
        out << text << std::flush;
        log << text;
      }
    }
    stage->finish();
    log.flush();
    if (!log) throw Error("failed writing " + opts.log.string());
    return kExitOk;
  } catch (const DeadlockError& e) {
    err << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "stage " << stage_name << ": " << e.what() << '\n';
  }
  return kExitData;
}

}  // namespace s2st::cli
