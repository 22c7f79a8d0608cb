#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace s2st {

/// Attention of N output tokens over I input frames, row-major.
class AttentionMatrix {
 public:
  AttentionMatrix(std::size_t rows, std::size_t cols, std::vector<double> weights);
  static AttentionMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t r, std::size_t c) const { return weights_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> weights_;
};

/// Half-open frame ranges [begin, end) that tile [0, I).
struct SegmentBoundaries {
  std::vector<std::size_t> cuts;  // interior boundaries, strictly increasing
  std::size_t n_frames = 0;

  std::vector<std::pair<std::size_t, std::size_t>> ranges() const;
};

/// Splits the input frames into sub-segments using the attention alignment.
///
/// Each token is anchored at the frame of its largest weight (lowest index on
/// ties); anchors are clamped to be non-decreasing. Between two consecutive
/// distinct anchors a boundary goes at ceil((a + b) / 2). Throws
/// NotStochasticError if a row does not sum to 1 within 1e-6, and
/// std::invalid_argument for an empty matrix or negative weight.
SegmentBoundaries segment_by_attention(const AttentionMatrix& attention);

}  // namespace s2st
