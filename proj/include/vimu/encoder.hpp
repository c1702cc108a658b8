#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "vimu/geometry.hpp"
#include "vimu/manifest.hpp"
#include "vimu/sequence.hpp"
#include "vimu/skeleton.hpp"

#include <json.hpp>

namespace vimu {

// ---------------------------------------------------------------------------
// Configuration

struct EncoderConfig {
  int embed_dim = 64;
  int gcn_blocks = 2;
  int temporal_kernel = 9;        // odd
  std::vector<int> channels{16, 32};  // one entry per block
  std::size_t window = 120;       // W, frames fed to the motion tower
  double temperature = 0.1;       // tau
  int batch_size = 64;
  double learning_rate = 1e-4;
  int epochs = 100;
  bool augment_rotate = true;
  bool augment_mask = true;
  bool rotate_per_joint = true;   // false = one shared rotation per sequence
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
  nlohmann::json to_json() const;
  static EncoderConfig from_json(const nlohmann::json& j);
};

// ---------------------------------------------------------------------------
// Text side

// Token ids are 1-based; id 0 is the reserved out-of-vocabulary token.
struct Vocab {
  std::vector<std::string> tokens;  // tokens[i] has id i+1
  std::unordered_map<std::string, int> ids;

  static Vocab build(const std::vector<std::string>& texts);
  static Vocab from_tokens(std::vector<std::string> toks);
  int size() const { return int(tokens.size()) + 1; }  // including OOV
  int id(const std::string& token) const;
};

// Lowercase, strip punctuation (non-alphanumeric -> space), split on
// whitespace. Empty text maps to the single OOV id.
std::vector<std::string> normalize_text(const std::string& text);
std::vector<int> tokenize(const std::string& text, const Vocab& vocab);

// ---------------------------------------------------------------------------
// Parameters

// All trainable tensors live in one flat vector with named column-major
// matrix views, so the optimizer, checkpoints and finite-difference checks
// all see the same memory.
class ParamStore {
 public:
  struct Entry {
    std::string name;
    int rows = 0, cols = 0;
    std::size_t offset = 0;
  };

  int add(const std::string& name, int rows, int cols);
  int index_of(const std::string& name) const;  // -1 if absent

  Eigen::Map<Eigen::MatrixXd> view(int idx);
  Eigen::Map<const Eigen::MatrixXd> view(int idx) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t total() const { return values_.size(); }

 private:
  std::vector<Entry> entries_;
  std::vector<double> values_;
};

struct EncoderState {
  EncoderConfig config;
  Vocab vocab;
  ParamStore params;
  std::vector<double> adam_m, adam_v;  // sized like params
  std::int64_t step = 0;

  // Seeded parameter initialization; adam moments start at zero.
  static EncoderState init(const EncoderConfig& cfg, Vocab vocab);
};

// Symmetrically normalized skeleton adjacency with self loops,
// D^{-1/2} (A + I) D^{-1/2}.
Eigen::MatrixXd normalized_adjacency(const Skeleton& skel);

// ---------------------------------------------------------------------------
// Forward passes (deterministic; embeddings are unit L2 norm)

Eigen::VectorXd encode_text(const EncoderState& state,
                            const std::vector<int>& tokens);
// `imu` must be windowed to exactly config.window frames (ShapeMismatch).
Eigen::VectorXd encode_motion(const EncoderState& state,
                              const ImuSequence& imu);

// ---------------------------------------------------------------------------
// Contrastive loss

struct InfoNceResult {
  double loss = 0.0;
  Eigen::MatrixXd d_motion;  // dL/d motion_embs, B x D
  Eigen::MatrixXd d_text;    // dL/d text_embs,  B x D
};

// Symmetric InfoNCE over rows: S = motion * text^T / tau, loss is the mean of
// the row-wise and column-wise cross entropies against the diagonal.
// Rows must be unit norm; B >= 2 (DegenerateBatch).
InfoNceResult info_nce_loss(const Eigen::MatrixXd& motion_embs,
                            const Eigen::MatrixXd& text_embs, double tau);

// ---------------------------------------------------------------------------
// Augmentations

// Applies one fixed rotation per joint to the accelerometer and gyroscope
// triples of every frame. Test hook for augment_rotate.
ImuSequence rotate_channels(const ImuSequence& imu,
                            const std::array<Quat, kJointCount>& quats);

// Uniform random rotation per joint (quaternion from a normalized 4-d
// Gaussian); one shared rotation for all joints when per_joint is false.
ImuSequence augment_rotate(const ImuSequence& imu, std::uint64_t seed,
                           bool per_joint = true);

// Samples m uniformly from {0..12}, then zeroes all channels of m joints
// chosen without replacement and clears their observed_mask bits.
ImuSequence augment_mask_joints(const ImuSequence& imu, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Training

// Total InfoNCE loss of one batch; windows.size() == token_lists.size() == B.
double batch_loss(const EncoderState& state,
                  const std::vector<ImuSequence>& windows,
                  const std::vector<std::vector<int>>& token_lists);

struct BatchGradients {
  double loss = 0.0;
  std::vector<double> grad;  // flat, same layout as ParamStore values
};

BatchGradients batch_loss_and_gradients(
    const EncoderState& state, const std::vector<ImuSequence>& windows,
    const std::vector<std::vector<int>>& token_lists);

// Supervised head over the (normalized) motion embedding; used by k-shot
// fine-tuning. Gradients flow into both the head and the encoder parameters.
struct ClassifierHead {
  Eigen::MatrixXd W;  // classes x embed_dim
  Eigen::VectorXd b;  // classes
};

struct SupervisedGradients {
  double loss = 0.0;
  std::vector<double> grad_params;
  Eigen::MatrixXd grad_head_W;
  Eigen::VectorXd grad_head_b;
};

SupervisedGradients classify_loss_and_gradients(
    const EncoderState& state, const ClassifierHead& head,
    const std::vector<ImuSequence>& windows, const std::vector<int>& labels);

// Bias-corrected Adam over a flat parameter vector (beta1 0.9, beta2 0.999,
// eps 1e-8).
class Adam {
 public:
  explicit Adam(std::size_t n) : m_(n, 0.0), v_(n, 0.0) {}
  // Resume from saved moments.
  Adam(std::vector<double> m, std::vector<double> v, std::int64_t step)
      : m_(std::move(m)), v_(std::move(v)), step_(step) {}

  void update(std::vector<double>& values, const std::vector<double>& grad,
              double lr);

  const std::vector<double>& m() const { return m_; }
  const std::vector<double>& v() const { return v_; }
  std::int64_t step() const { return step_; }

 private:
  std::vector<double> m_, v_;
  std::int64_t step_ = 0;
};

struct EpochLoss {
  int epoch = 0;
  double mean_loss = 0.0;
};

struct PretrainResult {
  EncoderState state;
  std::vector<EpochLoss> loss_log;
};

// Contrastive pretraining over a manifest of IMU records. Loads every
// referenced ISEQ up front; per iteration picks one text per record, applies
// the enabled augmentations, windows with a seeded random crop, and takes one
// Adam step on both towers. Single-threaded and fully deterministic in
// cfg.seed. Throws NonFiniteLoss with the offending batch ids.
PretrainResult pretrain(const EncoderConfig& cfg, const DatasetManifest& manifest,
                        const std::filesystem::path& manifest_dir);

// Loss log as CSV (header: epoch,mean_loss).
void write_loss_log(const std::filesystem::path& path,
                    const std::vector<EpochLoss>& log);

// ---------------------------------------------------------------------------
// Checkpoints: "ENC1", little-endian, config + vocab + named tensors
// (+ optimizer moments), byte-stable for identical states.

void save_checkpoint(const std::filesystem::path& path,
                     const EncoderState& state);
EncoderState load_checkpoint(const std::filesystem::path& path);

// FNV-1a digest of the canonical (sorted-key, compact) JSON text, as 16 hex
// chars. Used for checkpoint headers and artifact directories.
std::string config_digest(const nlohmann::json& j);

}  // namespace vimu
