#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace s2st::metrics {

/// Levenshtein distance with unit insert/delete/substitute costs.
template <typename T>
std::int64_t edit_distance(std::span<const T> a, std::span<const T> b) {
  std::vector<std::int64_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::int64_t diag = row[0];
    row[0] = static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::int64_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

template <typename T>
std::int64_t edit_distance(const std::vector<T>& a, const std::vector<T>& b) {
  return edit_distance(std::span<const T>(a), std::span<const T>(b));
}

/// Lowercased (ASCII) whitespace tokens.
std::vector<std::string> wer_tokens(std::string_view text);
/// Unicode code points with whitespace removed. Invalid UTF-8 bytes are kept
/// as single units.
std::vector<char32_t> cer_units(std::string_view text);

struct ErrorRate {
  std::int64_t edits = 0;
  std::int64_t ref_length = 0;
  double rate() const noexcept {
    return ref_length == 0 ? 0.0 : static_cast<double>(edits) / static_cast<double>(ref_length);
  }
};

/// Word error rate of one hypothesis. Throws EmptyReferenceError if the
/// normalized reference is empty.
double wer(std::string_view hyp, std::string_view ref);
double cer(std::string_view hyp, std::string_view ref);

/// Corpus-level rates: total edits over total reference length.
ErrorRate corpus_wer(std::span<const std::string> hyps, std::span<const std::string> refs);
ErrorRate corpus_cer(std::span<const std::string> hyps, std::span<const std::string> refs);

using TokenSeq = std::vector<std::string>;

struct BleuStats {
  std::vector<std::int64_t> correct;  // clipped n-gram matches, n = 1..max_n
  std::vector<std::int64_t> total;    // hypothesis n-grams
  std::int64_t hyp_length = 0;
  std::int64_t ref_length = 0;
};

struct ScoreReport {
  std::vector<double> bleu;        // bleu[n - 1] = BLEU-n on a 0..100 scale
  std::vector<double> precisions;  // smoothed p_n as fractions
  double brevity_penalty = 1.0;
  double length_ratio = 0.0;       // hypothesis tokens / reference tokens
  BleuStats stats;
};

BleuStats bleu_stats(std::span<const TokenSeq> hyps, std::span<const TokenSeq> refs, int max_n);

/// Corpus BLEU with one reference per hypothesis and exponential smoothing:
/// the q-th zero-match order gets precision 1 / (2^q * total_n); an order with
/// no hypothesis n-grams at all has precision 0. BLEU-n is the brevity penalty
/// times the geometric mean of p_1..p_n. Throws LengthMismatchError or
/// EmptyCorpusError.
ScoreReport bleu(std::span<const TokenSeq> hyps, std::span<const TokenSeq> refs, int max_n = 4);

}  // namespace s2st::metrics
