#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace scissor {

/// Row-major N x d block of float embeddings. Rows are tokens.
class TokenMatrix {
 public:
  /// Zero-filled matrix. Throws InvalidSize when rows or cols is 0.
  TokenMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of `data` (rows * cols values). Rejects NaN/Inf.
  TokenMatrix(std::size_t rows, std::size_t cols, std::vector<float> data);

  static TokenMatrix from_rows(std::initializer_list<std::initializer_list<float>> rows);
  /// Stacks `parts` vertically. All parts must share the same column count.
  static TokenMatrix concat(std::span<const TokenMatrix> parts);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<const float> row(std::size_t i) const;
  std::span<float> row(std::size_t i);

  float operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  float& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const float> data() const noexcept { return data_; }

  /// Copy of the selected rows, in the order given.
  TokenMatrix select_rows(std::span<const std::uint32_t> indices) const;

  bool operator==(const TokenMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<float> data_;
};

/// n frames, each an m x d TokenMatrix.
class VideoTokens {
 public:
  /// Throws ShapeMismatch unless every frame has identical shape.
  explicit VideoTokens(std::vector<TokenMatrix> frames);

  std::size_t frames() const noexcept { return frames_.size(); }
  std::size_t tokens_per_frame() const noexcept { return frames_.front().rows(); }
  std::size_t dims() const noexcept { return frames_.front().cols(); }
  std::size_t total_tokens() const noexcept { return frames() * tokens_per_frame(); }

  const TokenMatrix& frame(std::size_t i) const { return frames_.at(i); }
  std::span<const TokenMatrix> all_frames() const noexcept { return frames_; }

  /// All tokens, frame-major, as an (n*m) x d matrix.
  TokenMatrix flatten() const;

  bool operator==(const VideoTokens&) const = default;

 private:
  std::vector<TokenMatrix> frames_;
};

/// Dense symmetric N x N cosine-similarity matrix.
class SimilarityMatrix {
 public:
  explicit SimilarityMatrix(std::size_t n) : n_(n), values_(n * n, 0.0f) {}

  std::size_t size() const noexcept { return n_; }
  float operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  float& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<float> values_;
};

/// Symmetric boolean adjacency stored as packed bit rows.
///
/// Degrees (off-diagonal neighbour counts) are computed once at
/// construction so that component ordering costs O(N).
class AdjacencyMap {
 public:
  /// Undirected graph over n vertices with self-loops on every vertex.
  static AdjacencyMap from_edges(std::size_t n,
                                 std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

  /// From a dense boolean matrix; must be square and symmetric. The
  /// diagonal is forced true.
  static AdjacencyMap from_dense(const std::vector<std::vector<bool>>& bits);

  /// Builds the graph by evaluating `pred(i, j)` once for every i < j.
  template <typename Pred>
  static AdjacencyMap from_predicate(std::size_t n, Pred&& pred) {
    AdjacencyMap adj(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (pred(i, j)) adj.set_pair(i, j);
      }
    }
    adj.finish();
    return adj;
  }

  std::size_t size() const noexcept { return n_; }

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + (j >> 6)] >> (j & 63)) & 1U;
  }

  /// Neighbour count of i, excluding the self-loop.
  std::uint32_t degree(std::size_t i) const { return degree_[i]; }

  std::span<const std::uint64_t> row_words(std::size_t i) const {
    return {bits_.data() + i * words_, words_};
  }

  /// Calls f(j) for every j with test(i, j), ascending; includes i itself.
  template <typename F>
  void for_each_neighbor(std::size_t i, F&& f) const {
    const std::uint64_t* row = bits_.data() + i * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = row[w];
      while (word != 0) {
        const int bit = __builtin_ctzll(word);
        f(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(bit)));
        word &= word - 1;
      }
    }
  }

  /// Off-diagonal edge count.
  std::size_t edge_count() const noexcept;

  bool operator==(const AdjacencyMap&) const = default;

 private:
  explicit AdjacencyMap(std::size_t n);
  void set_pair(std::size_t i, std::size_t j);
  void finish();

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> degree_;
};

/// Pairwise cosine similarity of the rows of K.
///
/// Dot products and norms are accumulated in double and the result is
/// stored as float. The diagonal is exactly 1.
/// Throws NonFiniteInput or ZeroNormRow (row norm < 1e-12).
SimilarityMatrix cosine_similarity(const TokenMatrix& k);

/// bits[i][j] = S[i][j] > tau, with a true diagonal. tau must be in [0, 1).
AdjacencyMap binary_adjacency(const SimilarityMatrix& s, float tau);

/// binary_adjacency(cosine_similarity(k), tau) without materialising the
/// N x N similarity matrix. Produces bit-identical output.
AdjacencyMap similarity_graph(const TokenMatrix& k, float tau);

/// Throws InvalidTau unless tau is in [0, 1).
void check_tau(float tau);

/// Throws NonFiniteInput / ZeroNormRow if any row is unusable for cosine.
void check_rows_normalizable(const TokenMatrix& k);

}  // namespace scissor
