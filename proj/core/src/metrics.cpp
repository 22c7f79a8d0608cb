#include "s2st/metrics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "s2st/error.hpp"
#include "s2st/transducer.hpp"

namespace s2st::metrics {
namespace {

bool is_unicode_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
         c == 0x85 || c == 0xA0 || c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 ||
         c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = b0;
    if (b0 >= 0xF0 && b0 < 0xF8) {
      len = 4;
      cp = b0 & 0x07;
    } else if (b0 >= 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if (b0 >= 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    }
    bool ok = len == 1 ? b0 < 0x80 : i + len <= s.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      // Keep stray bytes distinguishable from real code points.
      out.push_back(0xDC00 + b0);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

using NgramCounts = std::map<std::vector<std::string>, std::int64_t>;

NgramCounts count_ngrams(const TokenSeq& seq, int n) {
  NgramCounts counts;
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + un <= seq.size(); ++i) {
    ++counts[std::vector<std::string>(seq.begin() + static_cast<std::ptrdiff_t>(i),
                                      seq.begin() + static_cast<std::ptrdiff_t>(i + un))];
  }
  return counts;
}

}  // namespace

std::vector<std::string> wer_tokens(std::string_view text) {
  std::vector<std::string> tokens = split_whitespace(text);
  for (auto& t : tokens) {
    for (char& c : t) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return tokens;
}

std::vector<char32_t> cer_units(std::string_view text) {
  std::vector<char32_t> out;
  for (char32_t c : decode_utf8(text)) {
    if (!is_unicode_space(c)) out.push_back(c);
  }
  return out;
}

double wer(std::string_view hyp, std::string_view ref) {
  const auto r = wer_tokens(ref);
  if (r.empty()) throw EmptyReferenceError("WER reference is empty");
  return static_cast<double>(edit_distance(wer_tokens(hyp), r)) / static_cast<double>(r.size());
}

double cer(std::string_view hyp, std::string_view ref) {
  const auto r = cer_units(ref);
  if (r.empty()) throw EmptyReferenceError("CER reference is empty");
  return static_cast<double>(edit_distance(cer_units(hyp), r)) / static_cast<double>(r.size());
}

namespace {

template <typename Units>
ErrorRate corpus_rate(std::span<const std::string> hyps, std::span<const std::string> refs,
                      Units units) {
  if (hyps.size() != refs.size()) {
    throw LengthMismatchError("hypothesis has " + std::to_string(hyps.size()) +
                              " lines, reference has " + std::to_string(refs.size()));
  }
  ErrorRate rate;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const auto h = units(hyps[i]);
    const auto r = units(refs[i]);
    rate.edits += edit_distance(h, r);
    rate.ref_length += static_cast<std::int64_t>(r.size());
  }
  if (rate.ref_length == 0) throw EmptyReferenceError("reference corpus is empty");
  return rate;
}

}  // namespace

ErrorRate corpus_wer(std::span<const std::string> hyps, std::span<const std::string> refs) {
  return corpus_rate(hyps, refs, wer_tokens);
}

ErrorRate corpus_cer(std::span<const std::string> hyps, std::span<const std::string> refs) {
  return corpus_rate(hyps, refs, cer_units);
}

BleuStats bleu_stats(std::span<const TokenSeq> hyps, std::span<const TokenSeq> refs, int max_n) {
  BleuStats s;
  s.correct.assign(static_cast<std::size_t>(max_n), 0);
  s.total.assign(static_cast<std::size_t>(max_n), 0);
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    s.hyp_length += static_cast<std::int64_t>(hyps[i].size());
    s.ref_length += static_cast<std::int64_t>(refs[i].size());
    for (int n = 1; n <= max_n; ++n) {
      const NgramCounts h = count_ngrams(hyps[i], n);
      const NgramCounts r = count_ngrams(refs[i], n);
      for (const auto& [gram, count] : h) {
        s.total[static_cast<std::size_t>(n - 1)] += count;
        if (auto it = r.find(gram); it != r.end()) {
          s.correct[static_cast<std::size_t>(n - 1)] += std::min(count, it->second);
        }
      }
    }
  }
  return s;
}

ScoreReport bleu(std::span<const TokenSeq> hyps, std::span<const TokenSeq> refs, int max_n) {
  if (hyps.size() != refs.size()) {
    throw LengthMismatchError("BLEU corpora differ in length: " + std::to_string(hyps.size()) +
                              " vs " + std::to_string(refs.size()));
  }
  if (hyps.empty()) throw EmptyCorpusError("BLEU needs at least one segment");
  if (max_n < 1) throw std::invalid_argument("BLEU max_n must be >= 1");

  ScoreReport report;
  report.stats = bleu_stats(hyps, refs, max_n);
  const BleuStats& s = report.stats;

  double smooth = 1.0;
  for (int n = 0; n < max_n; ++n) {
    double p = 0.0;
    if (s.total[static_cast<std::size_t>(n)] > 0) {
      if (s.correct[static_cast<std::size_t>(n)] == 0) {
        smooth *= 2.0;
        p = 1.0 / (smooth * static_cast<double>(s.total[static_cast<std::size_t>(n)]));
      } else {
        p = static_cast<double>(s.correct[static_cast<std::size_t>(n)]) /
            static_cast<double>(s.total[static_cast<std::size_t>(n)]);
      }
    }
    report.precisions.push_back(p);
  }

  if (s.hyp_length == 0) {
    report.brevity_penalty = 0.0;
  } else if (s.hyp_length < s.ref_length) {
    report.brevity_penalty =
        std::exp(1.0 - static_cast<double>(s.ref_length) / static_cast<double>(s.hyp_length));
  }
  report.length_ratio = s.ref_length == 0 ? 0.0
                                          : static_cast<double>(s.hyp_length) /
                                                static_cast<double>(s.ref_length);

  double log_sum = 0.0;
  bool zero = false;
  for (int n = 1; n <= max_n; ++n) {
    const double p = report.precisions[static_cast<std::size_t>(n - 1)];
    if (p <= 0.0) zero = true;
    if (!zero) log_sum += std::log(p);
    report.bleu.push_back(zero ? 0.0
                               : 100.0 * report.brevity_penalty *
                                     std::exp(log_sum / static_cast<double>(n)));
  }
  return report;
}

}  // namespace s2st::metrics
