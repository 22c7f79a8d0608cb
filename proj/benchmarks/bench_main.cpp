#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "s2st/metrics.hpp"
#include "s2st/wait_k.hpp"
#include "s2st/wire.hpp"

#ifdef S2ST_HAVE_CLI
#include "cli/pipeline.hpp"
#endif

using namespace s2st;

namespace {

std::vector<std::string> random_words(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> letter(0, 5);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + letter(rng))));
  return out;
}

TimedEvent sample_event(std::int64_t i) {
  return TimedEvent{Channel::IMT, i, 1000 + i, Token::regular("word" + std::to_string(i % 97)),
                    Provenance{i / 50, 900}};
}

void BM_SerializeEvent(benchmark::State& state) {
  const TimedEvent ev = sample_event(12345);
  for (auto _ : state) benchmark::DoNotOptimize(serialize_event(ev));
}
BENCHMARK(BM_SerializeEvent);

void BM_ParseEvent(benchmark::State& state) {
  const std::string line = serialize_event(sample_event(12345));
  for (auto _ : state) benchmark::DoNotOptimize(parse_event(line));
}
BENCHMARK(BM_ParseEvent);

void BM_WaitKSchedule(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(wait_k_schedule(n, n, 3));
}
BENCHMARK(BM_WaitKSchedule)->Range(8, 4096);

void BM_EditDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_words(n, 1), b = random_words(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::edit_distance(a, b));
}
BENCHMARK(BM_EditDistance)->Range(8, 1024);

void BM_CorpusBleu(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<metrics::TokenSeq> hyps, refs;
  for (std::size_t i = 0; i < n; ++i) {
    hyps.push_back(random_words(20, 2 * i));
    refs.push_back(random_words(20, 2 * i + 1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(metrics::bleu(hyps, refs));
}
BENCHMARK(BM_CorpusBleu)->Range(8, 1024);

#ifdef S2ST_HAVE_CLI
void BM_SimulateDemo(benchmark::State& state) {
  const std::string dir = S2ST_DEMO_DIR;
  const cli::PipelineConfig cfg = cli::load_config(dir + "/talk.conf");
  const cli::PipelineInput input = cli::load_input(cfg, dir + "/talk.txt");
  for (auto _ : state) benchmark::DoNotOptimize(cli::run_simulation(cfg, input));
}
BENCHMARK(BM_SimulateDemo);
#endif

}  // namespace

BENCHMARK_MAIN();
