#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "avsa/alignment.hpp"
#include "avsa/rng.hpp"

namespace avsa {

enum class AlignmentMode { avc, avsa };

inline const char* to_string(AlignmentMode m) { return m == AlignmentMode::avc ? "avc" : "avsa"; }

// Synthetic paired features: each (clip, crop) slot has a latent direction
// code shared by its audio and video feature vectors, pushed through fixed
// random mixing maps plus noise. Aligned pairs are therefore linearly
// recoverable by construction.
struct ToyDatasetConfig {
  std::size_t n_clips = 32;
  std::size_t crops_per_clip = 4;  // 1 for AVC
  std::size_t latent_dim = 8;
  std::size_t audio_dim = 16;
  std::size_t video_dim = 16;
  double noise_sigma = 0.05;
  std::uint64_t seed = 0;
  bool shuffle_pairs = false;  // destroys the correspondence (control setting)
};

struct ToyDataset {
  std::size_t n_clips = 0;
  std::size_t crops_per_clip = 1;
  Mat audio;  // (N K) x audio_dim, clip-major
  Mat video;  // (N K) x video_dim, clip-major
};

namespace detail {

inline Mat random_matrix(std::size_t rows, std::size_t cols, double scale, SeededRng& rng) {
  Mat m(rows, cols);
  for (auto& v : m.a) v = scale * rng.gaussian();
  return m;
}

}  // namespace detail

// Train/eval splits share the mixing maps (derived from the seed) so the
// eval clips live in the same feature space.
inline ToyDataset make_toy_dataset(const ToyDatasetConfig& cfg, std::uint64_t split_stream) {
  if (cfg.n_clips < 2) throw std::invalid_argument("toy dataset needs at least two clips");
  SeededRng map_rng(mix_seed(cfg.seed, 0xA11C));
  const Mat mix_audio =
      detail::random_matrix(cfg.latent_dim, cfg.audio_dim, 1.0 / std::sqrt(double(cfg.latent_dim)), map_rng);
  const Mat mix_video =
      detail::random_matrix(cfg.latent_dim, cfg.video_dim, 1.0 / std::sqrt(double(cfg.latent_dim)), map_rng);

  const std::size_t rows = cfg.n_clips * cfg.crops_per_clip;
  SeededRng rng(mix_seed(cfg.seed, split_stream));
  Mat latents(rows, cfg.latent_dim);
  for (auto& v : latents.a) v = rng.gaussian();

  ToyDataset out;
  out.n_clips = cfg.n_clips;
  out.crops_per_clip = cfg.crops_per_clip;
  out.audio = matmul(latents, mix_audio);
  out.video = matmul(latents, mix_video);
  for (auto& v : out.audio.a) v += cfg.noise_sigma * rng.gaussian();
  for (auto& v : out.video.a) v += cfg.noise_sigma * rng.gaussian();

  if (cfg.shuffle_pairs) {
    // Fisher-Yates on the video rows; audio keeps its order, so the
    // nominal positives are mismatched.
    std::vector<std::size_t> perm(rows);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = rows - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);
    Mat shuffled(rows, out.video.cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t k = 0; k < out.video.cols; ++k) shuffled(r, k) = out.video(perm[r], k);
    out.video = std::move(shuffled);
  }
  return out;
}

// Linear stand-ins for the encoders/heads and the A2V / V2A translation
// networks. Heads project each modality to the shared embedding space;
// translation maps act on embeddings to produce the predicted ones.
struct ToyModel {
  Mat audio_head;  // audio_dim x embed_dim
  Mat video_head;  // video_dim x embed_dim
  Mat a2v;         // embed_dim x embed_dim
  Mat v2a;         // embed_dim x embed_dim
};

struct ToyTrainConfig {
  AlignmentMode mode = AlignmentMode::avsa;
  std::size_t epochs = 500;
  double learning_rate = 40.0;
  double temperature = 1.0;
  std::size_t embed_dim = 16;
  std::uint64_t seed = 0;
};

struct ToyTrainResult {
  std::vector<double> loss_curve;
  double train_accuracy = 0.0;
  double eval_accuracy = 0.0;
  long long diverged_epoch = -1;  // epoch of the first non-finite loss, or -1
  ToyModel model;
};

namespace detail {

struct Forward {
  EmbeddingBatch target_audio, target_video, pred_audio, pred_video;
  SimilarityMatrix sim_audio;  // sim(pred_audio, target_audio)
  SimilarityMatrix sim_video;  // sim(pred_video, target_video)
};

inline EmbeddingBatch make_batch(Mat rows, std::size_t n_clips, std::size_t k, Modality m,
                                 EmbeddingRole role) {
  EmbeddingBatch b;
  b.n_clips = n_clips;
  b.crops_per_clip = k;
  b.rows = std::move(rows);
  b.modality = m;
  b.role = role;
  return b;
}

inline Forward forward(const ToyModel& model, const ToyDataset& data) {
  Forward f;
  const std::size_t n = data.n_clips, k = data.crops_per_clip;
  Mat ta = matmul(data.audio, model.audio_head);
  Mat tv = matmul(data.video, model.video_head);
  Mat pa = matmul(tv, model.v2a);  // predicted audio comes from the video branch
  Mat pv = matmul(ta, model.a2v);
  f.target_audio = make_batch(std::move(ta), n, k, Modality::audio, EmbeddingRole::target);
  f.target_video = make_batch(std::move(tv), n, k, Modality::video, EmbeddingRole::target);
  f.pred_audio = make_batch(std::move(pa), n, k, Modality::audio, EmbeddingRole::predicted);
  f.pred_video = make_batch(std::move(pv), n, k, Modality::video, EmbeddingRole::predicted);
  f.sim_audio = cosine_similarity_matrix(f.pred_audio, f.target_audio);
  f.sim_video = cosine_similarity_matrix(f.pred_video, f.target_video);
  return f;
}

inline void add_scaled(Mat& acc, const Mat& g, double scale) {
  for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += scale * g.a[i];
}

}  // namespace detail

// Full-batch gradient descent on the symmetric contrastive loss (mean of
// the audio->video and video->audio directions). Deterministic given the
// seed; single-threaded.
inline ToyTrainResult toy_train(const ToyDataset& train, const ToyDataset& eval,
                                const ToyTrainConfig& cfg) {
  if (train.n_clips < 2) throw std::invalid_argument("toy_train: need at least two clips");
  const std::size_t k = train.crops_per_clip;
  const TargetMask mask = cfg.mode == AlignmentMode::avc && k == 1
                              ? avc_targets(train.n_clips)
                              : avsa_targets(train.n_clips, k);

  SeededRng rng(mix_seed(cfg.seed, 0x70F));
  ToyModel m;
  m.audio_head = detail::random_matrix(train.audio.cols, cfg.embed_dim,
                                       1.0 / std::sqrt(double(train.audio.cols)), rng);
  m.video_head = detail::random_matrix(train.video.cols, cfg.embed_dim,
                                       1.0 / std::sqrt(double(train.video.cols)), rng);
  m.a2v = Mat::identity(cfg.embed_dim);
  m.v2a = Mat::identity(cfg.embed_dim);

  ToyTrainResult res;
  res.loss_curve.reserve(cfg.epochs);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const detail::Forward f = detail::forward(m, train);
    const LossResult la = contrastive_loss(f.sim_audio, mask, cfg.temperature);
    const LossResult lv = contrastive_loss(f.sim_video, mask, cfg.temperature);
    const double loss = 0.5 * (la.value + lv.value);
    res.loss_curve.push_back(loss);
    if (!std::isfinite(loss)) {
      res.diverged_epoch = static_cast<long long>(epoch);
      break;
    }

    // dL/dS carries the 1/2 of the symmetric mean.
    const EmbeddingGradients ga = backprop_to_embeddings(la.grad, f.pred_audio, f.target_audio);
    const EmbeddingGradients gv = backprop_to_embeddings(lv.grad, f.pred_video, f.target_video);

    // predicted audio = tv * v2a, predicted video = ta * a2v
    Mat d_tv = matmul(ga.d_predicted, transposed(m.v2a));
    detail::add_scaled(d_tv, gv.d_target, 1.0);
    Mat d_ta = matmul(gv.d_predicted, transposed(m.a2v));
    detail::add_scaled(d_ta, ga.d_target, 1.0);

    const Mat d_v2a = matmul(transposed(f.target_video.rows), ga.d_predicted);
    const Mat d_a2v = matmul(transposed(f.target_audio.rows), gv.d_predicted);
    const Mat d_ah = matmul(transposed(train.audio), d_ta);
    const Mat d_vh = matmul(transposed(train.video), d_tv);

    const double half_lr = 0.5 * cfg.learning_rate;
    detail::add_scaled(m.audio_head, d_ah, -half_lr);
    detail::add_scaled(m.video_head, d_vh, -half_lr);
    detail::add_scaled(m.a2v, d_a2v, -half_lr);
    detail::add_scaled(m.v2a, d_v2a, -half_lr);
  }

  {
    const detail::Forward f = detail::forward(m, train);
    res.train_accuracy = retrieval_accuracy(f.sim_audio, mask);
  }
  if (eval.n_clips >= 2) {
    const TargetMask eval_mask = avsa_targets(eval.n_clips, eval.crops_per_clip);
    const detail::Forward f = detail::forward(m, eval);
    res.eval_accuracy = retrieval_accuracy(f.sim_audio, eval_mask);
  }
  res.model = m;
  return res;
}

}  // namespace avsa
