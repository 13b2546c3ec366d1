#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace avsa {

// Small dense row-major matrix; everything in this module is tiny
// (batch x batch or batch x dim).
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Mat matmul(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul shape mismatch");
  Mat r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const double v = x(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

inline Mat transposed(const Mat& x) {
  Mat r(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

enum class Modality { audio, video };
enum class EmbeddingRole { predicted, target };

// N x K x D batch flattened clip-major, crop-minor: row r = clip (r / K),
// crop (r % K). All index semantics in this module rely on that order.
struct EmbeddingBatch {
  std::size_t n_clips = 0;
  std::size_t crops_per_clip = 1;
  Mat rows;  // (n_clips * crops_per_clip) x D
  Modality modality = Modality::audio;
  EmbeddingRole role = EmbeddingRole::predicted;

  std::size_t dim() const { return rows.cols; }
  std::size_t count() const { return rows.rows; }
};

inline constexpr double kNormFloor = 1e-12;

struct SimilarityMatrix {
  Mat s;  // row = predicted index, column = target index
};

// Entry (r, c) = <P_r, T_c> / (|P_r| |T_c|); entries with a sub-floor norm
// are 0.
inline SimilarityMatrix cosine_similarity_matrix(const EmbeddingBatch& p,
                                                 const EmbeddingBatch& t) {
  if (p.dim() != t.dim())
    throw std::invalid_argument("embedding dimension mismatch between batches");
  const std::size_t rn = p.count(), cn = t.count(), d = p.dim();

  std::vector<double> pn(rn), tn(cn);
  for (std::size_t r = 0; r < rn; ++r) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += p.rows(r, k) * p.rows(r, k);
    pn[r] = std::sqrt(s);
  }
  for (std::size_t c = 0; c < cn; ++c) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += t.rows(c, k) * t.rows(c, k);
    tn[c] = std::sqrt(s);
  }

  SimilarityMatrix out;
  out.s = Mat(rn, cn);
  for (std::size_t r = 0; r < rn; ++r) {
    if (pn[r] < kNormFloor) continue;
    for (std::size_t c = 0; c < cn; ++c) {
      if (tn[c] < kNormFloor) continue;
      double dp = 0.0;
      for (std::size_t k = 0; k < d; ++k) dp += p.rows(r, k) * t.rows(c, k);
      out.s(r, c) = dp / (pn[r] * tn[c]);
    }
  }
  return out;
}

// Binary positive mask with exactly one 1 per row.
struct TargetMask {
  Mat m;

  std::size_t positive_column(std::size_t row) const {
    for (std::size_t c = 0; c < m.cols; ++c)
      if (m(row, c) == 1.0) return c;
    throw std::logic_error("target mask row without positive");
  }
};

// AVC positives: same clip (i = j).
inline TargetMask avc_targets(std::size_t n_clips) {
  if (n_clips < 1) throw std::invalid_argument("avc_targets: need at least one clip");
  return {Mat::identity(n_clips)};
}

// AVSA positives: same clip and same crop (i = j and k = l), which under
// clip-major flattening is the (N K) x (N K) identity.
inline TargetMask avsa_targets(std::size_t n_clips, std::size_t crops_per_clip = 4) {
  if (n_clips < 1 || crops_per_clip < 1)
    throw std::invalid_argument("avsa_targets: need at least one clip and crop");
  return {Mat::identity(n_clips * crops_per_clip)};
}

struct LossResult {
  double value = 0.0;
  Mat grad;  // dL/dS, same shape as S
};

// Row-wise cross-entropy between softmax(S / temperature) and the mask:
// mean over rows of -log softmax at the positive column. The gradient is
// (softmax - M) / (temperature * rows).
inline LossResult contrastive_loss(const SimilarityMatrix& sim, const TargetMask& mask,
                                   double temperature = 1.0) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const Mat& s = sim.s;
  if (mask.m.rows != s.rows || mask.m.cols != s.cols)
    throw std::invalid_argument("similarity/mask shape mismatch");

  LossResult res;
  res.grad = Mat(s.rows, s.cols);
  double total = 0.0;
  for (std::size_t r = 0; r < s.rows; ++r) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < s.cols; ++c) mx = std::max(mx, s(r, c) / temperature);
    double denom = 0.0;
    for (std::size_t c = 0; c < s.cols; ++c) denom += std::exp(s(r, c) / temperature - mx);
    const double lse = mx + std::log(denom);
    const std::size_t pos = mask.positive_column(r);
    total += lse - s(r, pos) / temperature;
    const double inv = 1.0 / (temperature * static_cast<double>(s.rows));
    for (std::size_t c = 0; c < s.cols; ++c) {
      const double soft = std::exp(s(r, c) / temperature - lse);
      res.grad(r, c) = (soft - mask.m(r, c)) * inv;
    }
  }
  res.value = total / static_cast<double>(s.rows);
  return res;
}

struct EmbeddingGradients {
  Mat d_predicted;
  Mat d_target;
  std::vector<std::size_t> zero_norm_predicted;  // rows whose gradient was zeroed
  std::vector<std::size_t> zero_norm_target;
};

// Chain rule through the cosine: with p^ = p/|p|, t^ = t/|t| and
// S = <p^, t^>, dS/dp = (t^ - S p^) / |p| and symmetrically for t.
inline EmbeddingGradients backprop_to_embeddings(const Mat& grad_s, const EmbeddingBatch& p,
                                                 const EmbeddingBatch& t) {
  if (grad_s.rows != p.count() || grad_s.cols != t.count())
    throw std::invalid_argument("gradient shape mismatch");
  const std::size_t d = p.dim();
  if (t.dim() != d) throw std::invalid_argument("embedding dimension mismatch");

  const SimilarityMatrix sim = cosine_similarity_matrix(p, t);

  std::vector<double> pn(p.count()), tn(t.count());
  for (std::size_t r = 0; r < p.count(); ++r) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += p.rows(r, k) * p.rows(r, k);
    pn[r] = std::sqrt(s);
  }
  for (std::size_t c = 0; c < t.count(); ++c) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += t.rows(c, k) * t.rows(c, k);
    tn[c] = std::sqrt(s);
  }

  EmbeddingGradients out;
  out.d_predicted = Mat(p.count(), d);
  out.d_target = Mat(t.count(), d);

  for (std::size_t r = 0; r < p.count(); ++r) {
    if (pn[r] < kNormFloor) {
      out.zero_norm_predicted.push_back(r);
      continue;
    }
    for (std::size_t c = 0; c < t.count(); ++c) {
      if (tn[c] < kNormFloor) continue;
      const double g = grad_s(r, c);
      if (g == 0.0) continue;
      const double s_rc = sim.s(r, c);
      for (std::size_t k = 0; k < d; ++k) {
        const double ph = p.rows(r, k) / pn[r];
        const double th = t.rows(c, k) / tn[c];
        out.d_predicted(r, k) += g * (th - s_rc * ph) / pn[r];
      }
    }
  }
  for (std::size_t c = 0; c < t.count(); ++c) {
    if (tn[c] < kNormFloor) {
      out.zero_norm_target.push_back(c);
      continue;
    }
    for (std::size_t r = 0; r < p.count(); ++r) {
      if (pn[r] < kNormFloor) continue;
      const double g = grad_s(r, c);
      if (g == 0.0) continue;
      const double s_rc = sim.s(r, c);
      for (std::size_t k = 0; k < d; ++k) {
        const double ph = p.rows(r, k) / pn[r];
        const double th = t.rows(c, k) / tn[c];
        out.d_target(c, k) += g * (ph - s_rc * th) / tn[c];
      }
    }
  }
  return out;
}

// Fraction of rows whose argmax column is the positive one; ties break
// toward the lowest index, so a tie only counts when it is the positive.
inline double retrieval_accuracy(const SimilarityMatrix& sim, const TargetMask& mask) {
  const Mat& s = sim.s;
  if (mask.m.rows != s.rows || mask.m.cols != s.cols)
    throw std::invalid_argument("similarity/mask shape mismatch");
  std::size_t correct = 0;
  for (std::size_t r = 0; r < s.rows; ++r) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < s.cols; ++c)
      if (s(r, c) > s(r, best)) best = c;
    if (best == mask.positive_column(r)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(s.rows);
}

}  // namespace avsa
