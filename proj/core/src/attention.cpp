#include "s2st/attention.hpp"

#include <cmath>
#include <stdexcept>

#include "s2st/error.hpp"

namespace s2st {

AttentionMatrix::AttentionMatrix(std::size_t rows, std::size_t cols, std::vector<double> weights)
    : rows_(rows), cols_(cols), weights_(std::move(weights)) {
  if (weights_.size() != rows_ * cols_) {
    throw std::invalid_argument("attention weights do not match shape");
  }
}

AttentionMatrix AttentionMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("ragged attention rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return AttentionMatrix(rows.size(), cols, std::move(flat));
}

std::vector<std::pair<std::size_t, std::size_t>> SegmentBoundaries::ranges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t cut : cuts) {
    out.emplace_back(begin, cut);
    begin = cut;
  }
  out.emplace_back(begin, n_frames);
  return out;
}

SegmentBoundaries segment_by_attention(const AttentionMatrix& attention) {
  const std::size_t n = attention.rows();
  const std::size_t frames = attention.cols();
  if (n == 0 || frames == 0) throw std::invalid_argument("empty attention matrix");

  std::vector<std::size_t> anchors(n);
  for (std::size_t r = 0; r < n; ++r) {
    double sum = 0.0;
    std::size_t best = 0;
    for (std::size_t c = 0; c < frames; ++c) {
      const double w = attention.at(r, c);
      if (w < 0.0 || std::isnan(w)) throw std::invalid_argument("negative attention weight");
      sum += w;
      if (w > attention.at(r, best)) best = c;
    }
    if (std::abs(sum - 1.0) > 1e-6) throw NotStochasticError(r, sum);
    anchors[r] = r > 0 ? std::max(best, anchors[r - 1]) : best;
  }

  SegmentBoundaries out;
  out.n_frames = frames;
  for (std::size_t r = 1; r < n; ++r) {
    if (anchors[r] == anchors[r - 1]) continue;
    // Distinct anchors differ by at least one, so the rounded-up midpoint is
    // strictly inside (a, b] and strictly above any earlier cut.
    out.cuts.push_back((anchors[r - 1] + anchors[r] + 1) / 2);
  }
  return out;
}

}  // namespace s2st
