#include "scissor/tokens.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "scissor/error.hpp"

namespace scissor {

TokenMatrix::TokenMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw Error(Errc::InvalidSize, "token matrix needs at least one row and one column");
  }
  data_.assign(rows * cols, 0.0f);
}

TokenMatrix::TokenMatrix(std::size_t rows, std::size_t cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) {
    throw Error(Errc::InvalidSize, "token matrix needs at least one row and one column");
  }
  if (data_.size() != rows * cols) {
    throw Error(Errc::ShapeMismatch, "expected " + std::to_string(rows * cols) + " values, got " +
                                         std::to_string(data_.size()));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw Error(Errc::NonFiniteInput, "non-finite value at row " + std::to_string(i / cols) +
                                            ", column " + std::to_string(i % cols));
    }
  }
}

TokenMatrix TokenMatrix::from_rows(std::initializer_list<std::initializer_list<float>> rows) {
  const std::size_t n = rows.size();
  const std::size_t d = n == 0 ? 0 : rows.begin()->size();
  std::vector<float> data;
  data.reserve(n * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(Errc::ShapeMismatch, "ragged rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return TokenMatrix(n, d, std::move(data));
}

TokenMatrix TokenMatrix::concat(std::span<const TokenMatrix> parts) {
  if (parts.empty()) throw Error(Errc::InvalidSize, "nothing to concatenate");
  const std::size_t d = parts.front().cols();
  std::size_t n = 0;
  for (const auto& p : parts) {
    if (p.cols() != d) {
      throw Error(Errc::DimMismatch, "cannot concatenate matrices with " + std::to_string(d) +
                                         " and " + std::to_string(p.cols()) + " columns");
    }
    n += p.rows();
  }
  std::vector<float> data;
  data.reserve(n * d);
  for (const auto& p : parts) data.insert(data.end(), p.data_.begin(), p.data_.end());
  TokenMatrix out(n, d);
  out.data_ = std::move(data);
  return out;
}

std::span<const float> TokenMatrix::row(std::size_t i) const {
  if (i >= rows_) throw Error(Errc::IndexOutOfRange, "row " + std::to_string(i));
  return {data_.data() + i * cols_, cols_};
}

std::span<float> TokenMatrix::row(std::size_t i) {
  if (i >= rows_) throw Error(Errc::IndexOutOfRange, "row " + std::to_string(i));
  return {data_.data() + i * cols_, cols_};
}

TokenMatrix TokenMatrix::select_rows(std::span<const std::uint32_t> indices) const {
  TokenMatrix out(indices.size(), cols_);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const auto src = row(indices[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

VideoTokens::VideoTokens(std::vector<TokenMatrix> frames) : frames_(std::move(frames)) {
  if (frames_.empty()) throw Error(Errc::InvalidSize, "video needs at least one frame");
  const auto m = frames_.front().rows();
  const auto d = frames_.front().cols();
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    if (frames_[i].rows() != m || frames_[i].cols() != d) {
      throw Error(Errc::ShapeMismatch, "frame " + std::to_string(i) + " is " +
                                           std::to_string(frames_[i].rows()) + "x" +
                                           std::to_string(frames_[i].cols()) + ", expected " +
                                           std::to_string(m) + "x" + std::to_string(d));
    }
  }
}

TokenMatrix VideoTokens::flatten() const { return TokenMatrix::concat(frames_); }

// --- adjacency -------------------------------------------------------------

AdjacencyMap::AdjacencyMap(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0), degree_(n, 0) {
  if (n == 0) throw Error(Errc::InvalidSize, "graph needs at least one vertex");
  for (std::size_t i = 0; i < n; ++i) bits_[i * words_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
}

void AdjacencyMap::set_pair(std::size_t i, std::size_t j) {
  bits_[i * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
  bits_[j * words_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
}

void AdjacencyMap::finish() {
  for (std::size_t i = 0; i < n_; ++i) {
    std::uint32_t count = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      count += static_cast<std::uint32_t>(std::popcount(bits_[i * words_ + w]));
    }
    degree_[i] = count - 1;  // self-loop
  }
}

std::size_t AdjacencyMap::edge_count() const noexcept {
  std::size_t total = 0;
  for (auto d : degree_) total += d;
  return total / 2;
}

AdjacencyMap AdjacencyMap::from_edges(
    std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  AdjacencyMap adj(n);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw Error(Errc::IndexOutOfRange, "edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                             ") outside " + std::to_string(n) + " vertices");
    }
    adj.set_pair(a, b);
  }
  adj.finish();
  return adj;
}

AdjacencyMap AdjacencyMap::from_dense(const std::vector<std::vector<bool>>& bits) {
  const std::size_t n = bits.size();
  for (const auto& r : bits) {
    if (r.size() != n) throw Error(Errc::InvalidGraph, "adjacency matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (bits[i][j] != bits[j][i]) {
        throw Error(Errc::InvalidGraph, "adjacency matrix is not symmetric at (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  return from_predicate(n, [&](std::size_t i, std::size_t j) { return bits[i][j]; });
}

// --- similarity ------------------------------------------------------------

namespace {

constexpr double kMinNorm = 1e-12;

/// Unit-normalised copy of K in double precision.
class UnitRows {
 public:
  explicit UnitRows(const TokenMatrix& k) : n_(k.rows()), d_(k.cols()), v_(n_ * d_) {
    for (std::size_t i = 0; i < n_; ++i) {
      const auto r = k.row(i);
      double sq = 0.0;
      for (std::size_t c = 0; c < d_; ++c) {
        const double x = r[c];
        if (!std::isfinite(x)) {
          throw Error(Errc::NonFiniteInput, "non-finite value in row " + std::to_string(i));
        }
        sq += x * x;
      }
      const double norm = std::sqrt(sq);
      if (norm < kMinNorm) throw Error(Errc::ZeroNormRow, "row " + std::to_string(i));
      for (std::size_t c = 0; c < d_; ++c) v_[i * d_ + c] = r[c] / norm;
    }
  }

  std::size_t size() const noexcept { return n_; }

  float cosine(std::size_t i, std::size_t j) const {
    const double* a = v_.data() + i * d_;
    const double* b = v_.data() + j * d_;
    double acc = 0.0;
    for (std::size_t c = 0; c < d_; ++c) acc += a[c] * b[c];
    return static_cast<float>(std::clamp(acc, -1.0, 1.0));
  }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> v_;
};

}  // namespace

void check_tau(float tau) {
  if (!(tau >= 0.0f && tau < 1.0f)) {
    throw Error(Errc::InvalidTau, "tau must lie in [0, 1), got " + std::to_string(tau));
  }
}

void check_rows_normalizable(const TokenMatrix& k) { UnitRows check(k); }

SimilarityMatrix cosine_similarity(const TokenMatrix& k) {
  const UnitRows unit(k);
  const std::size_t n = unit.size();
  SimilarityMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = 1.0f;
    for (std::size_t j = i + 1; j < n; ++j) {
      const float c = unit.cosine(i, j);
      s(i, j) = c;
      s(j, i) = c;
    }
  }
  return s;
}

AdjacencyMap binary_adjacency(const SimilarityMatrix& s, float tau) {
  check_tau(tau);
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(s(i, j) - s(j, i)) > 1e-6f) {
        throw Error(Errc::InvalidGraph, "similarity matrix is not symmetric at (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  return AdjacencyMap::from_predicate(n, [&](std::size_t i, std::size_t j) { return s(i, j) > tau; });
}

AdjacencyMap similarity_graph(const TokenMatrix& k, float tau) {
  check_tau(tau);
  const UnitRows unit(k);
  return AdjacencyMap::from_predicate(
      unit.size(), [&](std::size_t i, std::size_t j) { return unit.cosine(i, j) > tau; });
}

}  // namespace scissor
