#include "vimu/synth_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "vimu/common.hpp"
#include "vimu/formats.hpp"
#include "vimu/rng.hpp"
#include "vimu/version.hpp"

namespace vimu {

using nlohmann::json;

bool Range::valid() const {
  return std::isfinite(lo) && std::isfinite(hi) && lo <= hi;
}

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

enum class Family {
  Walk,
  ArmRaise,
  Squat,
  Jump,
  Wave,
  Twist,
  SitDown,
  Kick,
};

const std::vector<std::string> kFamilyNames = {
    "walk", "arm_raise", "squat", "jump", "wave", "twist", "sit_down", "kick"};

Family family_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i)
    if (kFamilyNames[i] == name) return Family(i);
  throw Error(Errc::UnknownFamily, name);
}

// Joint indices in the canonical SMPL ordering.
enum Joint : int {
  kPelvis = 0,
  kLHip = 1,
  kRHip = 2,
  kSpine1 = 3,
  kLKnee = 4,
  kRKnee = 5,
  kSpine2 = 6,
  kSpine3 = 9,
  kLShoulder = 16,
  kRShoulder = 17,
  kLElbow = 18,
  kRElbow = 19,
};

struct FamilyDraw {
  double amplitude = 0.0;
  double frequency = 0.0;
  double duration = 0.0;
  double speed = 0.0;
  double heading = 0.0;  // radians about z
  double phase = 0.0;
};

struct PoseFrame {
  Vec3 root_pos;
  std::array<Quat, kJointCount> local;

  PoseFrame() { local.fill(Quat::identity()); }
};

Quat rot_x(double a) { return Quat::from_axis_angle({1, 0, 0}, a); }
Quat rot_y(double a) { return Quat::from_axis_angle({0, 1, 0}, a); }
Quat rot_z(double a) { return Quat::from_axis_angle({0, 0, 1}, a); }

double smoothstep01(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * (3.0 - 2.0 * u);
}

// arms hang at the sides with a slight elbow bend
void arms_down(PoseFrame& p) {
  p.local[kLShoulder] = rot_x(-1.40);
  p.local[kRShoulder] = rot_x(1.40);
  p.local[kLElbow] = rot_x(-0.15);
  p.local[kRElbow] = rot_x(0.15);
}

PoseFrame pose_at(Family family, const FamilyDraw& d, double t, double z0) {
  PoseFrame p;
  p.root_pos = {0.0, 0.0, z0};
  const double w = kTau * d.frequency * t + d.phase;

  switch (family) {
    case Family::Walk: {
      const Vec3 dir{std::cos(d.heading), std::sin(d.heading), 0.0};
      p.root_pos = Vec3{0, 0, z0} + dir * (d.speed * t);
      p.local[kPelvis] = rot_z(d.heading);
      const double swing = d.amplitude * std::sin(w);
      p.local[kLHip] = rot_y(swing);
      p.local[kRHip] = rot_y(-swing);
      // trailing leg folds at the knee
      p.local[kLKnee] = rot_y(0.5 * d.amplitude * (1.0 - std::cos(w)) * 0.5);
      p.local[kRKnee] = rot_y(0.5 * d.amplitude * (1.0 + std::cos(w)) * 0.5);
      arms_down(p);
      p.local[kLShoulder] = rot_x(-1.40) * rot_y(-0.6 * swing);
      p.local[kRShoulder] = rot_x(1.40) * rot_y(0.6 * swing);
      break;
    }
    case Family::ArmRaise: {
      const double u = 0.5 * (1.0 - std::cos(w));
      p.local[kLShoulder] = rot_x(-1.40 + d.amplitude * u);
      p.local[kRShoulder] = rot_x(1.40 - d.amplitude * u);
      p.local[kSpine2] = rot_y(-0.05 * u);
      break;
    }
    case Family::Squat: {
      const double u = 0.5 * (1.0 - std::cos(w));
      p.root_pos.z = z0 - d.amplitude * u;
      p.local[kLHip] = rot_y(-1.3 * u);
      p.local[kRHip] = rot_y(-1.3 * u);
      p.local[kLKnee] = rot_y(2.0 * u);
      p.local[kRKnee] = rot_y(2.0 * u);
      p.local[kSpine1] = rot_y(0.35 * u);
      arms_down(p);
      // arms reach forward for balance
      p.local[kLShoulder] = rot_x(-1.40) * rot_y(-0.9 * u);
      p.local[kRShoulder] = rot_x(1.40) * rot_y(-0.9 * u);
      break;
    }
    case Family::Jump: {
      const double s = std::sin(w);
      const double air = s > 0.0 ? s * s : 0.0;
      p.root_pos.z = z0 + d.amplitude * air;
      const double crouch = 0.8 * (1.0 - air);
      p.local[kLHip] = rot_y(-0.4 * crouch);
      p.local[kRHip] = rot_y(-0.4 * crouch);
      p.local[kLKnee] = rot_y(0.9 * crouch);
      p.local[kRKnee] = rot_y(0.9 * crouch);
      arms_down(p);
      p.local[kLShoulder] = rot_x(-1.40) * rot_y(-0.8 * air);
      p.local[kRShoulder] = rot_x(1.40) * rot_y(-0.8 * air);
      break;
    }
    case Family::Wave: {
      arms_down(p);
      p.local[kRShoulder] = rot_x(0.75);
      p.local[kRElbow] = rot_x(0.9) * rot_z(d.amplitude * std::sin(w));
      p.local[kSpine2] = rot_z(0.03 * std::sin(w));
      break;
    }
    case Family::Twist: {
      const double yaw = (d.amplitude / 3.0) * std::sin(w);
      p.local[kSpine1] = rot_z(yaw);
      p.local[kSpine2] = rot_z(yaw);
      p.local[kSpine3] = rot_z(yaw);
      arms_down(p);
      break;
    }
    case Family::SitDown: {
      const double u = smoothstep01((t - 0.30 * d.duration) / (0.40 * d.duration));
      p.root_pos.z = z0 - d.amplitude * u;
      p.local[kLHip] = rot_y(-1.5 * u);
      p.local[kRHip] = rot_y(-1.5 * u);
      p.local[kLKnee] = rot_y(1.5 * u);
      p.local[kRKnee] = rot_y(1.5 * u);
      p.local[kSpine1] = rot_y(0.2 * u);
      arms_down(p);
      break;
    }
    case Family::Kick: {
      const double s = std::sin(w);
      const double k = s > 0.0 ? s * s : 0.0;
      p.local[kRHip] = rot_y(-d.amplitude * k);
      p.local[kRKnee] = rot_y(0.8 * d.amplitude * (1.0 - k) * k * 2.0);
      p.local[kSpine1] = rot_y(0.15 * k);
      arms_down(p);
      p.local[kLShoulder] = rot_x(-1.40) * rot_y(-0.3 * k);
      break;
    }
  }
  return p;
}

// Forward kinematics over the canonical tree. Bone offsets are the canonical
// rest directions scaled to the skeleton's rest lengths, so per-frame bone
// lengths match skel.rest_lengths to machine precision.
void fk_frame(const PoseFrame& pose, const Skeleton& skel,
              std::array<Vec3, kJointCount>& out) {
  const auto& rest = canonical_rest_offsets();
  std::array<Quat, kJointCount> global;
  global[0] = pose.local[0];
  out[0] = pose.root_pos;
  for (int j = 1; j < kJointCount; ++j) {
    const int parent = skel.parent[j];
    Vec3 offset = rest[j];
    const double norm = offset.norm();
    if (norm > 0.0) offset = offset * (skel.rest_lengths[j] / norm);
    out[j] = out[parent] + global[parent].rotate(offset);
    global[j] = global[parent] * pose.local[j];
  }
}

double draw_range(Rng& rng, const Range& r) {
  return r.lo == r.hi ? r.lo : rng.uniform(r.lo, r.hi);
}

json range_to_json(const Range& r) { return json::array({r.lo, r.hi}); }

Range range_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2)
    throw Error(Errc::ConfigError, what + " must be a [lo, hi] pair");
  Range r{j[0].get<double>(), j[1].get<double>()};
  if (!r.valid()) throw Error(Errc::ConfigError, what + " range is invalid");
  return r;
}

PromptSpec make_prompt(std::string id, std::string family,
                       std::vector<std::string> texts, ParamsRange ranges) {
  PromptSpec s;
  s.prompt_id = std::move(id);
  s.family = std::move(family);
  s.texts = std::move(texts);
  s.params_range = ranges;
  return s;
}

}  // namespace

const std::vector<std::string>& family_names() { return kFamilyNames; }

std::vector<PromptSpec> default_prompts() {
  std::vector<PromptSpec> prompts;
  prompts.push_back(make_prompt(
      "walk", "walk",
      {"a person walks forward at a steady pace",
       "someone is walking in a straight line",
       "the subject walks across the room"},
      {{0.35, 0.65}, {1.6, 2.4}, {3.0, 6.0}, {0.8, 1.4}}));
  prompts.push_back(make_prompt(
      "arm_raise", "arm_raise",
      {"a person raises both arms overhead",
       "someone raising the arms above the head",
       "the subject lifts both arms up and lowers them"},
      {{1.6, 2.6}, {0.35, 0.7}, {3.0, 6.0}, {0.0, 0.0}}));
  prompts.push_back(make_prompt(
      "squat", "squat",
      {"a person performs deep squats",
       "someone squatting down and standing up repeatedly",
       "the subject does a squat exercise"},
      {{0.18, 0.35}, {0.4, 0.8}, {3.0, 6.0}, {0.0, 0.0}}));
  prompts.push_back(make_prompt(
      "jump", "jump",
      {"a person jumps up and down in place",
       "someone jumping repeatedly on the spot",
       "the subject performs vertical jumps"},
      {{0.15, 0.40}, {0.9, 1.5}, {3.0, 6.0}, {0.0, 0.0}}));
  prompts.push_back(make_prompt(
      "wave", "wave",
      {"a person waves with the right hand",
       "someone waving a hand in greeting",
       "the subject waves hello energetically"},
      {{0.5, 1.0}, {2.2, 3.8}, {3.0, 6.0}, {0.0, 0.0}}));
  prompts.push_back(make_prompt(
      "twist", "twist",
      {"a person twists the torso from side to side",
       "someone twisting the upper body left and right",
       "the subject rotates the trunk rhythmically"},
      {{0.6, 1.1}, {0.5, 1.1}, {3.0, 6.0}, {0.0, 0.0}}));
  prompts.push_back(make_prompt(
      "sit_down", "sit_down",
      {"a person sits down on a chair", "someone sitting down slowly",
       "the subject lowers onto a seat and sits still"},
      {{0.25, 0.45}, {0.3, 0.5}, {3.0, 6.0}, {0.0, 0.0}}));
  prompts.push_back(make_prompt(
      "kick", "kick",
      {"a person kicks forward with the right leg",
       "someone kicking repeatedly", "the subject performs front kicks"},
      {{0.7, 1.3}, {0.9, 1.6}, {3.0, 6.0}, {0.0, 0.0}}));
  return prompts;
}

std::vector<PromptSpec> load_prompts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded())
    throw Error(Errc::ConfigError, "malformed prompts JSON in " + path.string());
  const json& arr = doc.is_object() ? doc.at("prompts") : doc;
  if (!arr.is_array() || arr.empty())
    throw Error(Errc::ConfigError, "prompts must be a non-empty array");

  std::vector<PromptSpec> prompts;
  for (const json& j : arr) {
    PromptSpec s;
    s.prompt_id = j.at("prompt_id").get<std::string>();
    s.family = j.at("family").get<std::string>();
    family_from_name(s.family);  // validate
    s.texts = j.at("texts").get<std::vector<std::string>>();
    if (s.texts.empty())
      throw Error(Errc::ConfigError, "prompt " + s.prompt_id + " has no texts");
    const json& pr = j.at("params");
    s.params_range.amplitude = range_from_json(pr.at("amplitude"), "amplitude");
    s.params_range.frequency = range_from_json(pr.at("frequency"), "frequency");
    s.params_range.duration = range_from_json(pr.at("duration"), "duration");
    s.params_range.speed = pr.contains("speed")
                               ? range_from_json(pr.at("speed"), "speed")
                               : Range{0.0, 0.0};
    prompts.push_back(std::move(s));
  }
  return prompts;
}

void save_prompts(const std::filesystem::path& path,
                  const std::vector<PromptSpec>& prompts) {
  json arr = json::array();
  for (const auto& s : prompts) {
    json j;
    j["prompt_id"] = s.prompt_id;
    j["family"] = s.family;
    j["texts"] = s.texts;
    j["params"] = {{"amplitude", range_to_json(s.params_range.amplitude)},
                   {"frequency", range_to_json(s.params_range.frequency)},
                   {"duration", range_to_json(s.params_range.duration)},
                   {"speed", range_to_json(s.params_range.speed)}};
    arr.push_back(std::move(j));
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::IoFailure, "cannot open " + path.string());
  out << json{{"prompts", arr}}.dump(2) << '\n';
}

SampledMotion sample_motion(const PromptSpec& spec, const Skeleton& skel,
                            std::uint64_t seed, double frame_rate,
                            double duration_scale) {
  const Family family = family_from_name(spec.family);
  for (const Range* r : {&spec.params_range.amplitude,
                         &spec.params_range.frequency,
                         &spec.params_range.duration, &spec.params_range.speed})
    if (!r->valid())
      throw Error(Errc::InvalidArgument,
                  "prompt " + spec.prompt_id + " has an invalid range");

  Rng rng(seed);
  FamilyDraw d;
  d.amplitude = draw_range(rng, spec.params_range.amplitude);
  d.frequency = draw_range(rng, spec.params_range.frequency);
  d.duration = draw_range(rng, spec.params_range.duration) * duration_scale;
  d.speed = draw_range(rng, spec.params_range.speed);
  d.heading = rng.uniform(0.0, kTau);
  d.phase = rng.uniform(0.0, kTau);
  const std::size_t text_idx = rng.uniform_index(spec.texts.size());

  const double z0 = canonical_rest_offsets()[0].z;
  const std::size_t n_frames = std::max<std::size_t>(
      3, std::size_t(std::llround(d.duration * frame_rate)) + 1);

  MotionSequence seq = MotionSequence::zeros(n_frames, frame_rate);
  std::array<Vec3, kJointCount> frame;
  for (std::size_t f = 0; f < n_frames; ++f) {
    const double t = double(f) / frame_rate;
    fk_frame(pose_at(family, d, t, z0), skel, frame);
    for (int j = 0; j < kJointCount; ++j) seq.set_pos(f, j, frame[j]);
  }
  return {std::move(seq), spec.texts[text_idx]};
}

std::size_t dataset_record_count(const GenerationConfig& cfg,
                                 std::size_t n_prompts) {
  const double count =
      double(cfg.samples_per_prompt) * double(n_prompts) * cfg.volume_ratio;
  return std::size_t(std::llround(count));
}

DatasetManifest generate_dataset(const std::vector<PromptSpec>& prompts,
                                 const GenerationConfig& cfg,
                                 const std::filesystem::path& out_dir) {
  if (prompts.empty())
    throw Error(Errc::InvalidArgument, "prompt list is empty");
  if (cfg.samples_per_prompt < 1 || !(cfg.frame_rate > 0.0) ||
      !(cfg.volume_ratio > 0.0))
    throw Error(Errc::InvalidArgument, "generation config out of range");

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::IoFailure, "cannot create " + out_dir.string());

  const Skeleton& skel = canonical_skeleton();
  const std::size_t total = dataset_record_count(cfg, prompts.size());

  DatasetManifest manifest;
  manifest.meta.creation_seed = cfg.seed;
  manifest.meta.tool_version = kToolVersion;
  manifest.records.reserve(total);

  char name[64];
  for (std::size_t i = 0; i < total; ++i) {
    const PromptSpec& spec = prompts[i % prompts.size()];
    const std::uint64_t record_seed = hash64(cfg.seed, i);

    double jitter = 1.0;
    if (cfg.duration_jitter.lo != cfg.duration_jitter.hi) {
      Rng jrng(hash64(record_seed, "duration-jitter"));
      jitter = jrng.uniform(cfg.duration_jitter.lo, cfg.duration_jitter.hi);
    } else {
      jitter = cfg.duration_jitter.lo;
    }

    SampledMotion sample =
        sample_motion(spec, skel, record_seed, cfg.frame_rate, jitter);

    std::snprintf(name, sizeof name, "%s-%06zu.mseq", cfg.generator_tag.c_str(),
                  i);
    write_motion(out_dir / name, sample.motion);

    TextMotionRecord rec;
    rec.id = cfg.generator_tag + "-" + std::to_string(i);
    rec.texts = spec.texts;
    rec.motion_ref = name;
    rec.label = spec.family;
    rec.source = cfg.source;
    rec.generator_tag = cfg.generator_tag;
    rec.seed = record_seed;
    manifest.records.push_back(std::move(rec));
  }
  return manifest;
}

namespace {

// First `take` elements of a seeded uniform permutation of [0, n).
std::vector<std::size_t> draw_without_replacement(std::size_t n,
                                                  std::size_t take,
                                                  std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(take);
  return idx;
}

std::size_t round_half_away(double x) {
  return std::size_t(std::llround(x));
}

}  // namespace

DatasetManifest mix_datasets(const DatasetManifest& real,
                             const DatasetManifest& synth, double real_fraction,
                             std::size_t total, std::uint64_t seed) {
  if (!(real_fraction >= 0.0 && real_fraction <= 1.0))
    throw Error(Errc::InvalidArgument, "real_fraction must be in [0, 1]");

  const std::size_t n_real = round_half_away(real_fraction * double(total));
  const std::size_t n_synth = total - n_real;
  if (real.records.size() < n_real)
    throw Error(Errc::InsufficientRecords,
                "real: need " + std::to_string(n_real) + ", have " +
                    std::to_string(real.records.size()) + " (short by " +
                    std::to_string(n_real - real.records.size()) + ")");
  if (synth.records.size() < n_synth)
    throw Error(Errc::InsufficientRecords,
                "synthetic: need " + std::to_string(n_synth) + ", have " +
                    std::to_string(synth.records.size()) + " (short by " +
                    std::to_string(n_synth - synth.records.size()) + ")");

  DatasetManifest out;
  out.meta.creation_seed = seed;
  out.meta.tool_version = kToolVersion;
  out.records.reserve(total);
  for (std::size_t i :
       draw_without_replacement(real.records.size(), n_real, hash64(seed, "mix-real")))
    out.records.push_back(real.records[i]);
  for (std::size_t i : draw_without_replacement(synth.records.size(), n_synth,
                                                hash64(seed, "mix-synth")))
    out.records.push_back(synth.records[i]);

  Rng rng(hash64(seed, "mix-shuffle"));
  for (std::size_t i = out.records.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    std::swap(out.records[i - 1], out.records[j]);
  }
  return out;
}

DatasetManifest subsample(const DatasetManifest& real, double fraction,
                          std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(Errc::InvalidArgument, "fraction must be in (0, 1]");
  const std::size_t m = round_half_away(fraction * double(real.records.size()));
  if (m < 1) throw Error(Errc::EmptyResult, "subsample would be empty");

  DatasetManifest out;
  out.meta.creation_seed = seed;
  out.meta.tool_version = kToolVersion;
  out.records.reserve(m);
  for (std::size_t i : draw_without_replacement(real.records.size(), m,
                                                hash64(seed, "subsample")))
    out.records.push_back(real.records[i]);
  return out;
}

}  // namespace vimu
