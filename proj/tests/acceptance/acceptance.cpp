// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1 for ctest).

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "cli/commands.hpp"
#include "cli/pipeline.hpp"
#include "s2st/error.hpp"
#include "s2st/latency.hpp"
#include "s2st/metrics.hpp"
#include "s2st/stage.hpp"
#include "s2st/validate.hpp"
#include "s2st/wire.hpp"
#include "test_support.hpp"

using namespace s2st;
using namespace s2st::testing;
namespace fs = std::filesystem;
namespace m = s2st::metrics;
using Clk = std::chrono::steady_clock;

namespace {

const fs::path kDemo = S2ST_DEMO_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int g_failed = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = Clk::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clk::now() - t0).count();
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::printf("%s  %-24s %s [%s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), timing);
  std::fflush(stdout);
  if (!o.pass) ++g_failed;
}

Outcome fail(const std::string& why) { return {false, why}; }

std::vector<std::string> regular_texts(const std::vector<TimedEvent>& events) {
  std::vector<std::string> out;
  for (const TimedEvent& e : events) {
    if (e.token() != nullptr && e.token()->is_regular()) out.push_back(e.token()->text());
  }
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() /
                     ("s2st_acceptance_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string report_value(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
  }
  return "<missing>";
}

int run_demo(const std::string& name, const fs::path& out, cli::RunMode mode, std::string& report) {
  cli::RunOptions o;
  o.config = kDemo / (name + ".conf");
  o.input = kDemo / (name + ".txt");
  o.out_dir = out;
  o.mode = mode;
  o.self_exe = S2ST_EXE;
  std::ostringstream os, err;
  const int code = cli::cmd_run(o, os, err);
  report = os.str() + err.str();
  return code;
}

std::vector<std::string> token_sequence(const fs::path& log) {
  std::vector<std::string> out;
  for (const TimedEvent& e : read_event_log_file(log.string())) {
    if (const Token* t = e.token()) out.push_back(t->text());
    if (const SynthChunkRef* c = e.chunk()) out.push_back("chk:" + c->phrase_text);
  }
  return out;
}

// ------------------------------------------------------------------ criteria

Outcome wait_k_correctness() {
  int cases = 0;
  for (int j = 1; j <= 10; ++j) {
    for (int i = 1; i <= 10; ++i) {
      for (int k = 1; k <= 12; ++k) {
        const auto oracle = brute_force_wait_k(j, i, k);
        if (oracle.size() != 1) return fail("oracle not unique at J=" + std::to_string(j));
        if (to_string(wait_k_schedule(j, i, k)) != oracle.front()) {
          return fail("mismatch at J=" + std::to_string(j) + " I=" + std::to_string(i) +
                      " k=" + std::to_string(k));
        }
        ++cases;
      }
    }
  }
  return {true, std::to_string(cases) + " cases exact"};
}

Outcome batch_degeneration() {
  Rng rng(0xacce0001);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
  for (int trial = 0; trial < 200; ++trial) {
    DictionaryTable table;
    for (const std::string& w : vocab) {
      if (rng.chance(0.2)) continue;
      std::vector<std::string> tgt;
      for (auto n = rng.uniform(0, 3); n > 0; --n) tgt.push_back("T" + random_word(rng, 3));
      table[w] = tgt;
    }
    const auto unmapped = rng.chance(0.5) ? UnmappedPolicy::Passthrough : UnmappedPolicy::Drop;
    SegmentSpec seg = random_segment(rng, rng.uniform(0, 5000), 15);
    for (auto& t : seg.tokens) t = rng.pick(vocab);
    const int k = static_cast<int>(seg.tokens.size() + rng.uniform(0, 5));
    Clock clock = Clock::virtual_clock();
    const auto out = run_stage(std::make_unique<WaitKPolicy>(k), make_dictionary_transducer(table, unmapped),
                               make_token_stream({seg}), clock,
                               ComputeModel{rng.uniform(0, 50), rng.uniform(0, 10)});
    std::vector<Token> in;
    for (const auto& t : seg.tokens) in.push_back(Token::regular(t));
    std::vector<std::string> offline;
    for (const Token& t : DictionaryTransducer(table, unmapped).map_offline(in)) offline.push_back(t.text());
    if (regular_texts(out) != offline) return fail("trial " + std::to_string(trial) + " differs");
    if (!validate_stream(out).ok()) return fail("invalid output stream");
  }
  return {true, "200 fuzzed segments equal offline transduction"};
}

Outcome blocks_timing() {
  std::string report;
  const fs::path out = scratch("blocks");
  if (run_demo("blocks", out, cli::RunMode::Sim, report) != 0) return fail(report);
  const std::string isr = report_value(report, "isr_delay_mean");
  const std::string imt = report_value(report, "imt_delay_mean");
  const std::string itts = report_value(report, "itts_delay_mean");
  if (isr != "1.650" || imt != "2.750" || itts != "3.850") {
    return fail("got " + isr + "/" + imt + "/" + itts);
  }
  // cascade monotonicity on every run of the repository demos
  for (const char* demo : {"blocks", "talk"}) {
    const fs::path dir = scratch(std::string("cascade_") + demo);
    std::string r;
    if (run_demo(demo, dir, cli::RunMode::Sim, r) != 0) return fail(r);
    ChannelLogs logs{read_event_log_file((dir / "SRC.log").string()),
                     read_event_log_file((dir / "ISR.log").string()),
                     read_event_log_file((dir / "IMT.log").string()),
                     read_event_log_file((dir / "ITTS.log").string())};
    for (const AlignedUnit& u : align_outputs(logs)) {
      if (!u.cascade_ordered()) return fail(std::string(demo) + " breaks cascade order");
    }
  }
  return {true, "ISR/IMT/ITTS first outputs " + isr + "/" + imt + "/" + itts + " s"};
}

Outcome speaking_latency() {
  Rng rng(0xacce0002);
  auto make = [](const std::vector<Millis>& ready, const std::vector<Millis>& dur) {
    std::vector<SynthChunk> c;
    for (std::size_t i = 0; i < ready.size(); ++i) {
      c.push_back(SynthChunk{make_accent_phrase({"a"}, 0), ready[i], dur[i], 0});
    }
    return c;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = rng.uniform(1, 100);
    std::vector<Millis> ready, dur;
    Millis t = rng.uniform(0, 2000);
    for (std::int64_t i = 0; i < n; ++i) {
      ready.push_back(t += rng.uniform(0, 1000));
      dur.push_back(5 * rng.uniform(1, 300));
    }
    const auto plan = schedule_playback(make(ready, dur));
    const auto oracle = playback_oracle(ready, dur);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      if (plan.entries[i].play_start_ms != oracle[i] ||
          plan.entries[i].speaking_latency_ms != oracle[i] - ready[i]) {
        return fail("oracle mismatch in trial " + std::to_string(trial));
      }
    }
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = rng.uniform(2, 60);
    std::vector<Millis> ready, dur;
    Millis t = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      ready.push_back(t += rng.uniform(0, 800));
      dur.push_back(5 * rng.uniform(1, 200));
    }
    const auto before = schedule_playback(make(ready, dur));
    const auto idx = static_cast<std::size_t>(rng.uniform(0, n - 1));
    dur[idx] += 5 * rng.uniform(1, 200);
    const auto after = schedule_playback(make(ready, dur));
    for (std::size_t i = idx + 1; i < ready.size(); ++i) {
      if (after.entries[i].speaking_latency_ms < before.entries[i].speaking_latency_ms) {
        return fail("monotone load violated in trial " + std::to_string(trial));
      }
    }
  }
  return {true, "1000 oracle instances, 1000 load perturbations"};
}

Outcome metrics_oracles() {
  // edit distance, exhaustive
  std::vector<std::vector<int>> all{{}};
  for (std::size_t len = 1; len <= 6; ++len) {
    const std::size_t count = all.size();
    for (std::size_t i = 0; i < count; ++i) {
      if (all[i].size() != len - 1) continue;
      for (int s = 0; s < 3; ++s) {
        auto w = all[i];
        w.push_back(s);
        all.push_back(w);
      }
    }
  }
  std::size_t pairs = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      if (m::edit_distance(a, b) != recursive_edit_distance(a, b)) return fail("edit distance mismatch");
      ++pairs;
    }
  }

  // BLEU, values fixed by hand
  auto seq = [](const std::string& s) { return m::wer_tokens(s); };
  struct Case {
    std::vector<std::string> hyp, ref;
    int order;
    double expected;
  };
  const std::vector<Case> cases = {
      {{"a b c d e"}, {"a b c d e"}, 4, 100.0},
      {{"a b c d"}, {"a b c e"}, 4, 100.0 * std::pow(0.125, 0.25)},
      {{"a b x c"}, {"a b c d"}, 4, 100.0 * std::pow(2.0, -1.5)},
      {{"a a b", "x y z w"}, {"a b c", "x y z w v"}, 4,
       100.0 * std::exp(-1.0 / 7.0) * std::pow(16.0 / 35.0, 0.25)},
      {{"a b c d"}, {"e f g h"}, 4, 100.0 * std::pow(1.0 / (8.0 * 12.0 * 16.0 * 16.0), 0.25)},
      {{"a b c d"}, {"a b c d a b c d"}, 4, 100.0 / std::exp(1.0)},
      {{"a b"}, {"a b"}, 3, 0.0},
  };
  for (std::size_t c = 0; c < cases.size(); ++c) {
    std::vector<m::TokenSeq> h, r;
    for (const auto& s : cases[c].hyp) h.push_back(seq(s));
    for (const auto& s : cases[c].ref) r.push_back(seq(s));
    const double got = m::bleu(h, r).bleu[static_cast<std::size_t>(cases[c].order - 1)];
    if (std::abs(got - cases[c].expected) > 1e-9) return fail("BLEU case " + std::to_string(c + 1));
  }
  if (m::bleu(std::vector<m::TokenSeq>{seq("a b c")}, std::vector<m::TokenSeq>{seq("a b c")}).length_ratio != 1.0) {
    return fail("length ratio");
  }

  // WER / CER
  if (m::wer("see a dog", "see the dog") != 1.0 / 3.0) return fail("WER 1/3");
  if (m::wer("see the dog", "see the dog") != 0.0) return fail("WER 0");
  if (m::cer("abcd", "abce") != 0.25) return fail("CER 0.25");
  if (m::cer("a b", "ab") != 0.0) return fail("CER whitespace");
  return {true, std::to_string(pairs) + " edit-distance pairs, " + std::to_string(cases.size()) +
                    " BLEU cases, WER/CER exact"};
}

Outcome flush_semantics() {
  Rng rng(0xacce0003);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = static_cast<int>(rng.uniform(1, 6));
    std::vector<SegmentSpec> segs;
    Millis t = 0;
    for (auto n = rng.uniform(2, 6); n > 0; --n) {
      segs.push_back(random_segment(rng, t, 12));
      t = segs.back().end_ms + rng.uniform(0, 400);
    }
    Clock clock = Clock::virtual_clock();
    const auto out = run_stage(std::make_unique<WaitKPolicy>(k), std::make_unique<CountingTransducer>(),
                               make_token_stream(segs), clock);
    const auto per_segment = texts_by_segment(out);
    if (per_segment.size() != segs.size()) return fail("segment count");
    for (std::size_t s = 0; s < segs.size(); ++s) {
      Clock c2 = Clock::virtual_clock();
      const auto alone = run_stage(std::make_unique<WaitKPolicy>(k), std::make_unique<CountingTransducer>(),
                                   make_token_stream({segs[s]}), c2);
      if (per_segment[s] != texts_by_segment(alone)[0]) {
        return fail("trial " + std::to_string(trial) + " segment " + std::to_string(s));
      }
    }
  }
  return {true, "200 multi-segment streams equal isolated runs"};
}

Outcome protocol_round_trip() {
  Rng rng(0xacce0004);
  auto random_event = [&] {
    const Channel c = static_cast<Channel>(rng.uniform(0, 3));
    const Millis first = rng.uniform(0, 10'000'000);
    Payload p = Token::end_seq();
    switch (rng.uniform(0, 5)) {
      case 0: p = Token::begin_seq(); break;
      case 1: p = Token::end_block(); break;
      case 2: break;
      case 3: p = FrameSpan{rng.uniform(1, 100000), HopMs::from_scaled(rng.uniform(1, 10'000'000))}; break;
      case 4: p = SynthChunkRef{rng.uniform(0, 1'000'000), random_word(rng) + " " + random_word(rng)}; break;
      default: p = Token::regular(random_word(rng, 10)); break;
    }
    return TimedEvent{c, rng.uniform(0, 1'000'000), first + rng.uniform(0, 1'000'000), p,
                      Provenance{rng.uniform(0, 10000), first}};
  };
  for (int i = 0; i < 10000; ++i) {
    const TimedEvent e = random_event();
    if (parse_event(serialize_event(e)) != e) return fail("round trip " + std::to_string(i));
  }
  const std::string alphabet = "0123456789\t\n -.<>/abcdefSRCIMTfrmtokeosblkchk";
  int rejected = 0, different = 0;
  for (int i = 0; i < 1000;) {
    const TimedEvent e = random_event();
    std::string line = serialize_event(e);
    line.pop_back();
    const auto pos = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(line.size()) - 1));
    const char c = alphabet[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(alphabet.size()) - 1))];
    switch (rng.uniform(0, 2)) {
      case 0:
        if (line[pos] == c) continue;
        line[pos] = c;
        break;
      case 1: line.erase(pos, 1); break;
      default: line.insert(pos, 1, c); break;
    }
    ++i;
    try {
      const TimedEvent parsed = parse_event(line);
      if (parsed == e || serialize_event(parsed) != line + "\n") return fail("silent corruption: " + line);
      ++different;
    } catch (const ParseError&) {
      ++rejected;
    }
  }
  return {true, "10000 round trips; 1000 mutations: " + std::to_string(rejected) + " rejected, " +
                    std::to_string(different) + " parsed to a different event"};
}

Outcome determinism() {
  const fs::path a = scratch("det_a"), b = scratch("det_b"), p = scratch("det_pipe");
  std::string ra, rb, rp;
  if (run_demo("talk", a, cli::RunMode::Sim, ra) != 0) return fail(ra);
  if (run_demo("talk", b, cli::RunMode::Sim, rb) != 0) return fail(rb);
  for (const char* f : {"SRC.log", "ISR.log", "IMT.log", "ITTS.log", "report.txt", "chart.txt"}) {
    if (slurp(a / f) != slurp(b / f)) return fail(std::string(f) + " differs between sim runs");
  }
  if (run_demo("talk", p, cli::RunMode::Pipe, rp) != 0) return fail("pipe run: " + rp);
  for (const char* f : {"ISR.log", "IMT.log", "ITTS.log"}) {
    if (token_sequence(a / f) != token_sequence(p / f)) return fail(std::string(f) + " differs in pipe mode");
  }
  return {true, "sim logs byte-identical; pipe token sequences match sim"};
}

Outcome whole_suite(const Clk::time_point start, const std::vector<std::string>& unit_binaries) {
  for (const std::string& bin : unit_binaries) {
    const std::string cmd = "\"" + bin + "\" >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) return fail(bin + " failed");
  }
  const double secs = std::chrono::duration<double>(Clk::now() - start).count();
  char buf[96];
  std::snprintf(buf, sizeof buf, "acceptance criteria plus %zu unit suites in %.1f s",
                unit_binaries.size(), secs);
  return {secs < 60.0, buf};
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = Clk::now();
  std::vector<std::string> unit_binaries(argv + 1, argv + argc);

  criterion("wait-k correctness", [&] {
    const auto t0 = Clk::now();
    Outcome o = wait_k_correctness();
    const double secs = std::chrono::duration<double>(Clk::now() - t0).count();
    if (secs >= 5.0) o = fail("too slow");
    return o;
  });
  criterion("batch degeneration", batch_degeneration);
  criterion("block-delay reproduction", blocks_timing);
  criterion("speaking-latency oracle", speaking_latency);
  criterion("metrics oracles", metrics_oracles);
  criterion("flush semantics", flush_semantics);
  criterion("protocol round-trip", protocol_round_trip);
  criterion("determinism", determinism);
  criterion("whole suite < 60 s", [&] { return whole_suite(start, unit_binaries); });

  std::printf("%s: %d criteria failed\n", g_failed == 0 ? "ACCEPTED" : "REJECTED", g_failed);
  return g_failed == 0 ? 0 : 1;
}
