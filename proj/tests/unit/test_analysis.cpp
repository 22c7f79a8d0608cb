#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "s2st/chart.hpp"
#include "s2st/error.hpp"
#include "s2st/latency.hpp"
#include "s2st/metrics.hpp"
#include "test_support.hpp"

using namespace s2st;
using namespace s2st::testing;
namespace m = s2st::metrics;

namespace {

m::TokenSeq toks(const std::string& s) { return m::wer_tokens(s); }

m::ScoreReport bleu1(const std::string& hyp, const std::string& ref) {
  const std::vector<m::TokenSeq> h{toks(hyp)}, r{toks(ref)};
  return m::bleu(h, r);
}

// Source log with one frame block per 550 ms and an EndSeq per segment.
std::vector<TimedEvent> source_log(const std::vector<std::pair<Millis, int>>& segments) {
  std::vector<TimedEvent> out;
  EventFactory f(Channel::Source);
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto [start, blocks] = segments[s];
    const auto seg = static_cast<std::int64_t>(s);
    for (int b = 0; b < blocks; ++b) {
      const Millis t = start + 550 * b;
      out.push_back(f.make(t, FrameSpan{32, kDefaultHop}, {seg, t}));
    }
    const Millis end = start + 550 * blocks;
    out.push_back(f.make(end, Token::end_seq(), {seg, end}));
  }
  return out;
}

TimedEvent tok(Channel c, std::int64_t seq, Millis t, const std::string& text, std::int64_t seg,
               Millis first) {
  return TimedEvent{c, seq, t, Token::regular(text), {seg, first}};
}

std::vector<std::string> split_cells(const std::string& row) {
  std::vector<std::string> cells;
  std::stringstream ss(row);
  std::string cell;
  while (std::getline(ss, cell, '|')) cells.push_back(cell);
  return cells;
}

std::size_t first_filled_column(const std::string& chart, const std::string& row_label) {
  std::istringstream in(chart);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(row_label, 0) != 0) continue;
    const auto cells = split_cells(line);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (cells[c].find_first_not_of(' ') != std::string::npos) return c - 1;
    }
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("edit_distance examples and properties") {
  using V = std::vector<std::string>;
  CHECK(m::edit_distance(V{"see", "the", "dog"}, V{"see", "the", "dog"}) == 0);
  CHECK(m::edit_distance(V{"see", "the", "dog"}, V{"see", "a", "dog"}) == 1);
  CHECK(m::edit_distance(V{"a", "b", "c"}, V{}) == 3);
  CHECK(m::edit_distance(V{}, V{"a"}) == 1);

  Rng rng(0x5eed0301);
  auto random_seq = [&] {
    std::vector<int> v(static_cast<std::size_t>(rng.uniform(0, 10)));
    for (int& x : v) x = static_cast<int>(rng.uniform(0, 3));
    return v;
  };
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_seq(), b = random_seq(), c = random_seq();
    const auto ab = m::edit_distance(a, b);
    REQUIRE(ab == m::edit_distance(b, a));
    REQUIRE(m::edit_distance(a, c) <= ab + m::edit_distance(b, c));
  }
}

TEST_CASE("edit_distance equals the recursive oracle exhaustively (length <= 6, 3 symbols)") {
  std::vector<std::vector<int>> all{{}};
  for (std::size_t len = 1; len <= 6; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& v : all) {
      if (v.size() != len - 1) continue;
      for (int s = 0; s < 3; ++s) {
        auto w = v;
        w.push_back(s);
        next.push_back(w);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
  }
  REQUIRE(all.size() == 1093);
  std::size_t mismatches = 0;
  for (const auto& a : all) {
    for (const auto& b : all) mismatches += m::edit_distance(a, b) != recursive_edit_distance(a, b);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("wer and cer") {
  CHECK(m::wer("see the dog", "see the dog") == 0.0);
  CHECK(m::wer("see a dog", "see the dog") == 1.0 / 3.0);
  CHECK(m::wer("See THE  dog", "see the dog") == 0.0);
  CHECK(m::cer("abcd", "abce") == 0.25);
  CHECK(m::cer("a b c", "abc") == 0.0);
  CHECK(m::cer("\xe3\x81\x82\xe3\x81\x84", "\xe3\x81\x82\xe3\x81\x86") == 0.5);
  CHECK_THROWS_AS(m::wer("a", "   "), EmptyReferenceError);
  CHECK_THROWS_AS(m::cer("a", ""), EmptyReferenceError);

  const std::vector<std::string> hyps{"a b", "c"}, refs{"a x", "c d e"};
  const m::ErrorRate r = m::corpus_wer(hyps, refs);
  CHECK(r.edits == 3);
  CHECK(r.ref_length == 5);
  CHECK(r.rate() == 0.6);
  const std::vector<std::string> one{"a"};
  CHECK_THROWS_AS(m::corpus_wer(one, refs), LengthMismatchError);
}

TEST_CASE("WER is zero exactly when the normalized sequences match") {
  Rng rng(0x5eed0302);
  const std::vector<std::string> vocab = {"a", "b", "C", "d"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string h, r;
    for (auto n = rng.uniform(1, 5); n > 0; --n) h += rng.pick(vocab) + " ";
    for (auto n = rng.uniform(1, 5); n > 0; --n) r += rng.pick(vocab) + " ";
    REQUIRE((m::wer(h, r) == 0.0) == (m::wer_tokens(h) == m::wer_tokens(r)));
    REQUIRE((m::cer(h, r) == 0.0) == (m::cer_units(h) == m::cer_units(r)));
  }
}

TEST_CASE("BLEU hand-derived cases") {
  SUBCASE("identity") {
    const auto s = bleu1("a b c d e", "a b c d e");
    for (double b : s.bleu) CHECK(b == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(s.length_ratio == 1.0);
  }
  SUBCASE("one substitution at the end: p = 3/4, 2/3, 1/2, smoothed 1/2") {
    const auto s = bleu1("a b c d", "a b c e");
    CHECK(s.precisions[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(s.precisions[3] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.brevity_penalty == 1.0);
    CHECK(std::abs(s.bleu[3] - 59.460355750136054) < 1e-9);
    CHECK(std::abs(s.bleu[0] - 75.0) < 1e-9);
  }
  SUBCASE("two zero orders smoothed 1/4 and 1/4") {
    const auto s = bleu1("a b x c", "a b c d");
    CHECK(std::abs(s.bleu[3] - 35.35533905932738) < 1e-9);
  }
  SUBCASE("two segments with clipping and a short hypothesis") {
    const std::vector<m::TokenSeq> h{toks("a a b"), toks("x y z w")};
    const std::vector<m::TokenSeq> r{toks("a b c"), toks("x y z w v")};
    const auto s = m::bleu(h, r);
    CHECK(s.stats.correct == std::vector<std::int64_t>{6, 4, 2, 1});
    CHECK(s.stats.total == std::vector<std::int64_t>{7, 5, 3, 1});
    const double bp = std::exp(-1.0 / 7.0);
    CHECK(std::abs(s.brevity_penalty - bp) < 1e-12);
    CHECK(std::abs(s.bleu[0] - 100.0 * bp * 6.0 / 7.0) < 1e-9);
    CHECK(std::abs(s.bleu[3] - 100.0 * bp * std::pow(16.0 / 35.0, 0.25)) < 1e-9);
    CHECK(s.length_ratio == doctest::Approx(7.0 / 8.0).epsilon(1e-12));
  }
  SUBCASE("nothing matches") {
    const auto s = bleu1("a b c d", "e f g h");
    const double expected = 100.0 * std::pow(1.0 / 8 * 1.0 / 12 * 1.0 / 16 * 1.0 / 16, 0.25);
    CHECK(std::abs(s.bleu[3] - expected) < 1e-9);
    CHECK(std::abs(s.bleu[0] - 12.5) < 1e-9);
  }
  SUBCASE("half-length hypothesis, every n-gram matching") {
    const auto s = bleu1("a b c d", "a b c d a b c d");
    for (double b : s.bleu) CHECK(std::abs(b - 100.0 / std::exp(1.0)) < 1e-9);
    CHECK(s.length_ratio == 0.5);
  }
  SUBCASE("hypothesis too short for higher orders") {
    const auto s = bleu1("a b", "a b");
    CHECK(std::abs(s.bleu[1] - 100.0) < 1e-9);
    CHECK(s.bleu[2] == 0.0);
    CHECK(s.bleu[3] == 0.0);
  }
  SUBCASE("empty hypothesis") {
    const auto s = bleu1("", "a b");
    CHECK(s.brevity_penalty == 0.0);
    for (double b : s.bleu) CHECK(b == 0.0);
  }
  SUBCASE("errors") {
    const std::vector<m::TokenSeq> one{toks("a")}, none{};
    CHECK_THROWS_AS(m::bleu(one, none), LengthMismatchError);
    CHECK_THROWS_AS(m::bleu(none, none), EmptyCorpusError);
  }
}

TEST_CASE("BLEU is invariant under token relabeling and bounded") {
  Rng rng(0x5eed0303);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
  const std::map<std::string, std::string> relabel = {
      {"a", "q"}, {"b", "a"}, {"c", "zz"}, {"d", "b"}, {"e", "c"}};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<m::TokenSeq> h, r, h2, r2;
    for (auto n = rng.uniform(1, 4); n > 0; --n) {
      m::TokenSeq hs, rs;
      for (auto k = rng.uniform(0, 8); k > 0; --k) hs.push_back(rng.pick(vocab));
      for (auto k = rng.uniform(1, 8); k > 0; --k) rs.push_back(rng.pick(vocab));
      h.push_back(hs);
      r.push_back(rs);
      for (auto& t : hs) t = relabel.at(t);
      for (auto& t : rs) t = relabel.at(t);
      h2.push_back(hs);
      r2.push_back(rs);
    }
    const auto s1 = m::bleu(h, r), s2 = m::bleu(h2, r2);
    REQUIRE(s1.bleu == s2.bleu);
    REQUIRE(s1.length_ratio == s2.length_ratio);
    for (double b : s1.bleu) REQUIRE((b >= 0.0 && b <= 100.0 + 1e-9));
  }
}

TEST_CASE("BLEU-n is non-increasing when precisions are") {
  Rng rng(0x5eed0304);
  // Single substitution into a sequence of distinct tokens: p_n falls with n.
  for (int trial = 0; trial < 300; ++trial) {
    const auto len = rng.uniform(1, 12);
    m::TokenSeq ref;
    for (std::int64_t i = 0; i < len; ++i) ref.push_back("w" + std::to_string(i));
    m::TokenSeq hyp = ref;
    hyp[static_cast<std::size_t>(rng.uniform(0, len - 1))] = "sub";
    const std::vector<m::TokenSeq> h{hyp}, r{ref};
    const auto s = m::bleu(h, r);
    for (std::size_t n = 1; n < s.bleu.size(); ++n) REQUIRE(s.bleu[n] <= s.bleu[n - 1] + 1e-9);
  }
  // Any corpus whose smoothed precisions happen to be non-increasing.
  const std::vector<std::string> vocab = {"a", "b", "c"};
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<m::TokenSeq> h, r;
    for (auto n = rng.uniform(1, 3); n > 0; --n) {
      m::TokenSeq hs, rs;
      for (auto k = rng.uniform(1, 8); k > 0; --k) hs.push_back(rng.pick(vocab));
      for (auto k = rng.uniform(1, 8); k > 0; --k) rs.push_back(rng.pick(vocab));
      h.push_back(hs);
      r.push_back(rs);
    }
    const auto s = m::bleu(h, r);
    bool monotone = true;
    for (std::size_t n = 1; n < s.precisions.size(); ++n) {
      monotone = monotone && s.precisions[n] <= s.precisions[n - 1];
    }
    if (!monotone) continue;
    ++checked;
    for (std::size_t n = 1; n < s.bleu.size(); ++n) REQUIRE(s.bleu[n] <= s.bleu[n - 1] + 1e-9);
  }
  CHECK(checked > 100);
}

TEST_CASE("BLEU-n can increase with n on a two-segment corpus") {
  // Unigram precision 2/3 but bigram precision 1: BLEU-2 exceeds BLEU-1.
  const std::vector<m::TokenSeq> h{toks("a"), toks("x y")};
  const std::vector<m::TokenSeq> r{toks("b"), toks("x y")};
  const auto s = m::bleu(h, r);
  CHECK(s.bleu[1] > s.bleu[0]);
}

TEST_CASE("align_outputs examples") {
  SUBCASE("single segment at 1650 / 2750 / 3850") {
    ChannelLogs logs;
    logs.src = source_log({{0, 10}});
    logs.isr = {tok(Channel::ISR, 0, 1650, "a", 0, 0)};
    logs.imt = {tok(Channel::IMT, 0, 2750, "b", 0, 0)};
    logs.itts = {TimedEvent{Channel::ITTS, 0, 3850, SynthChunkRef{450, "b"}, {0, 0}}};
    const auto units = align_outputs(logs);
    REQUIRE(units.size() == 1);
    CHECK(units[0].source_start_ms == 0);
    CHECK(units[0].isr_ms == 1650);
    CHECK(units[0].imt_ms == 2750);
    CHECK(units[0].itts_ms == 3850);
    CHECK(units[0].complete());
    CHECK(units[0].cascade_ordered());
  }
  SUBCASE("missing ITTS is flagged") {
    ChannelLogs logs;
    logs.src = source_log({{0, 2}});
    logs.isr = {tok(Channel::ISR, 0, 600, "a", 0, 0)};
    const auto units = align_outputs(logs);
    REQUIRE(units.size() == 1);
    CHECK_FALSE(units[0].complete());
    CHECK(units[0].missing_channels() == std::vector<Channel>{Channel::IMT, Channel::ITTS});
    CHECK_THROWS_AS(compute_evs(units), EmptyInputError);
  }
  SUBCASE("two interleaved segments") {
    ChannelLogs logs;
    logs.src = source_log({{0, 2}, {1100, 2}});
    logs.isr = {tok(Channel::ISR, 0, 1300, "b1", 1, 1100), tok(Channel::ISR, 1, 1400, "a1", 0, 0),
                tok(Channel::ISR, 2, 1500, "a0", 0, 0)};
    const auto units = align_outputs(logs);
    REQUIRE(units.size() == 2);
    CHECK(units[0].segment_id == 0);
    CHECK(units[0].isr_ms == 1400);
    CHECK(units[1].segment_id == 1);
    CHECK(units[1].source_start_ms == 1100);
    CHECK(units[1].isr_ms == 1300);
  }
  SUBCASE("unknown segment") {
    ChannelLogs logs;
    logs.src = source_log({{0, 1}});
    logs.imt = {tok(Channel::IMT, 0, 100, "a", 7, 0)};
    CHECK_THROWS_AS(align_outputs(logs), InconsistentProvenanceError);
  }
}

TEST_CASE("compute_evs examples") {
  auto unit = [](std::int64_t id, Millis start, Millis isr, Millis imt, Millis itts) {
    AlignedUnit u;
    u.segment_id = id;
    u.source_start_ms = start;
    u.isr_ms = isr;
    u.imt_ms = imt;
    u.itts_ms = itts;
    return u;
  };
  SUBCASE("single unit") {
    const std::vector<AlignedUnit> units{unit(0, 0, 1650, 2750, 3850)};
    const LatencyReport r = compute_evs(units);
    CHECK(r.isr.mean_s == doctest::Approx(1.65));
    CHECK(r.imt.mean_s == doctest::Approx(2.75));
    CHECK(r.itts.mean_s == doctest::Approx(3.85));
    CHECK(r.isr.variance_s2 == 0.0);
    CHECK(r.units == 1);
  }
  SUBCASE("two units, sample variance") {
    const std::vector<AlignedUnit> units{unit(0, 0, 1000, 1000, 1000), unit(1, 5000, 7000, 7000, 7000)};
    const LatencyReport r = compute_evs(units);
    CHECK(r.isr.mean_s == doctest::Approx(1.5));
    CHECK(r.isr.variance_s2 == doctest::Approx(0.5));
  }
  SUBCASE("zero delays") {
    const std::vector<AlignedUnit> units{unit(0, 300, 300, 300, 300)};
    const LatencyReport r = compute_evs(units);
    CHECK(r.isr.mean_s == 0.0);
    CHECK(r.itts.mean_s == 0.0);
  }
  SUBCASE("empty") { CHECK_THROWS_AS(compute_evs({}), EmptyInputError); }
  SUBCASE("report keys") {
    const std::vector<AlignedUnit> units{unit(0, 0, 1650, 2750, 3850)};
    std::istringstream in(compute_evs(units).to_text());
    std::vector<std::string> keys;
    std::string line;
    while (std::getline(in, line)) keys.push_back(line.substr(0, line.find(" = ")));
    CHECK(keys == std::vector<std::string>{"isr_delay_mean", "isr_delay_var", "imt_delay_mean",
                                           "imt_delay_var", "itts_delay_mean", "itts_delay_var",
                                           "speak_latency_mean", "speak_latency_max", "units"});
  }
}

TEST_CASE("compute_evs matches direct recomputation") {
  Rng rng(0x5eed0305);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<AlignedUnit> units;
    std::vector<double> d;
    for (auto n = rng.uniform(1, 20); n > 0; --n) {
      AlignedUnit u;
      u.segment_id = static_cast<std::int64_t>(units.size());
      u.source_start_ms = rng.uniform(0, 100000);
      u.isr_ms = u.source_start_ms + rng.uniform(0, 5000);
      u.imt_ms = *u.isr_ms + rng.uniform(0, 5000);
      u.itts_ms = *u.imt_ms + rng.uniform(0, 5000);
      d.push_back(static_cast<double>(*u.imt_ms - u.source_start_ms) / 1000.0);
      units.push_back(u);
    }
    double mean = 0.0;
    for (double x : d) mean += x;
    mean /= static_cast<double>(d.size());
    double var = 0.0;
    for (double x : d) var += (x - mean) * (x - mean);
    var = d.size() > 1 ? var / static_cast<double>(d.size() - 1) : 0.0;
    const LatencyReport r = compute_evs(units);
    REQUIRE(std::abs(r.imt.mean_s - mean) < 1e-12);
    REQUIRE(std::abs(r.imt.variance_s2 - var) < 1e-9 * std::max(1.0, var));
    REQUIRE(r.imt.variance_s2 >= 0.0);
  }
}

TEST_CASE("speaking latency statistics and formatting") {
  LatencyReport r;
  PlaybackPlan plan;
  plan.entries = {{0, 0}, {800, 300}, {1600, 600}};
  add_speaking_latency(r, plan);
  CHECK(r.speak_latency_mean_s == doctest::Approx(0.3));
  CHECK(r.speak_latency_max_s == doctest::Approx(0.6));
  CHECK(format_fixed3(1.65) == "1.650");
  CHECK(format_fixed3(0.0005) == "0.001");
  CHECK(format_fixed3(3.2184) == "3.218");
}

TEST_CASE("render_alignment_chart") {
  SUBCASE("empty logs give a header only") {
    const std::string chart = render_alignment_chart({}, ChannelLogs{});
    CHECK(chart == "# alignment chart: block_ms = 550, col_width = 10\n");
  }
  SUBCASE("block offsets 3, 5, 7") {
    ChannelLogs logs;
    logs.src = source_log({{0, 10}});
    logs.isr = {tok(Channel::ISR, 0, 1650, "another", 0, 0)};
    logs.imt = {tok(Channel::IMT, 0, 2750, "betsu", 0, 0)};
    logs.itts = {TimedEvent{Channel::ITTS, 0, 3850, SynthChunkRef{450, "betsu no"}, {0, 0}}};
    const auto units = align_outputs(logs);
    const std::string chart = render_alignment_chart(units, logs);
    CHECK(first_filled_column(chart, "SRC") == 0);
    CHECK(first_filled_column(chart, "ISR") == 3);
    CHECK(first_filled_column(chart, "IMT") == 5);
    CHECK(first_filled_column(chart, "ITTS") == 7);
    CHECK(chart == render_alignment_chart(units, logs));
    CHECK(chart.find("another") != std::string::npos);
  }
  SUBCASE("two segments are divided") {
    ChannelLogs logs;
    logs.src = source_log({{0, 1}, {600, 1}});
    logs.isr = {tok(Channel::ISR, 0, 550, "a", 0, 0), tok(Channel::ISR, 1, 1200, "b", 1, 600)};
    const auto units = align_outputs(logs);
    const std::string chart = render_alignment_chart(units, logs);
    CHECK(chart.find("\n---") != std::string::npos);
    CHECK(chart.find("segment 0") < chart.find("segment 1"));
  }
  SUBCASE("long cells are cut") {
    ChannelLogs logs;
    logs.src = source_log({{0, 1}});
    logs.isr = {tok(Channel::ISR, 0, 0, "supercalifragilistic", 0, 0)};
    const auto units = align_outputs(logs);
    CHECK(render_alignment_chart(units, logs, {550, 6}).find("super~") != std::string::npos);
  }
}
