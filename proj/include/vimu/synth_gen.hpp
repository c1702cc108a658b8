#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vimu/manifest.hpp"
#include "vimu/sequence.hpp"
#include "vimu/skeleton.hpp"

namespace vimu {

// Closed interval with finite bounds.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool valid() const;
};

// Per-family kinematic parameter intervals. Units: amplitude in meters for
// center-of-mass families (squat, jump, sit_down) and radians for limb
// families; frequency Hz; duration s; speed m/s (walk only).
struct ParamsRange {
  Range amplitude;
  Range frequency;
  Range duration;
  Range speed;
};

struct PromptSpec {
  std::string prompt_id;
  std::vector<std::string> texts;  // >= 1 paraphrases
  std::string family;              // one of family_names()
  ParamsRange params_range;
};

struct GenerationConfig {
  std::size_t samples_per_prompt = 1;  // K
  std::uint64_t seed = 0;
  double frame_rate = 30.0;
  double volume_ratio = 1.0;  // dataset size multiplier, > 0
  Range duration_jitter{1.0, 1.0};  // multiplicative, applied per record
  std::string generator_tag = "procedural-v1";
  std::string source = "synthetic";  // provenance tag for emitted records
};

// The eight shipped procedural motion families.
const std::vector<std::string>& family_names();

// One PromptSpec per family with default parameter ranges and >= 3 text
// paraphrases each.
std::vector<PromptSpec> default_prompts();

// Prompt specs from JSON: either an array of prompt objects or an object
// with a "prompts" array. See default_prompts() for the schema.
std::vector<PromptSpec> load_prompts(const std::filesystem::path& path);
void save_prompts(const std::filesystem::path& path,
                  const std::vector<PromptSpec>& prompts);

struct SampledMotion {
  MotionSequence motion;
  std::string text;  // the paraphrase the sample was conditioned on
};

// Draws family parameters, duration and one text uniformly from the spec
// using `seed`, then synthesizes the trajectory by forward kinematics from
// sampled joint angles (bone lengths match the skeleton exactly).
// Deterministic in (spec, seed). Throws UnknownFamily.
SampledMotion sample_motion(const PromptSpec& spec, const Skeleton& skel,
                            std::uint64_t seed, double frame_rate = 30.0,
                            double duration_scale = 1.0);

// Number of records generate_dataset emits: round(K * |prompts| * ratio),
// half away from zero.
std::size_t dataset_record_count(const GenerationConfig& cfg,
                                 std::size_t n_prompts);

// Emits one MSEQ file per record under out_dir plus the manifest records.
// Record i uses prompts[i % |prompts|] with per-record seed
// hash64(cfg.seed, i), so generation is order-independent.
DatasetManifest generate_dataset(const std::vector<PromptSpec>& prompts,
                                 const GenerationConfig& cfg,
                                 const std::filesystem::path& out_dir);

// Fixed-volume mix: round(real_fraction * total) records drawn uniformly
// without replacement from `real`, the rest from `synth`, output order
// shuffled by `seed`. Throws InsufficientRecords naming the deficient side.
DatasetManifest mix_datasets(const DatasetManifest& real,
                             const DatasetManifest& synth, double real_fraction,
                             std::size_t total, std::uint64_t seed);

// Uniform without-replacement sample of round(fraction * |real|) records.
DatasetManifest subsample(const DatasetManifest& real, double fraction,
                          std::uint64_t seed);

}  // namespace vimu
