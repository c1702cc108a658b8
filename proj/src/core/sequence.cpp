#include "vimu/sequence.hpp"

#include <algorithm>
#include <cmath>

#include "vimu/common.hpp"
#include "vimu/rng.hpp"

namespace vimu {

MotionSequence MotionSequence::zeros(std::size_t frames, double rate) {
  MotionSequence s;
  s.frame_rate = rate;
  s.n_frames = frames;
  s.data.assign(frames * kJointCount * 3, 0.0);
  return s;
}

bool MotionSequence::finite() const {
  return std::all_of(data.begin(), data.end(),
                     [](double v) { return std::isfinite(v); });
}

ImuSequence ImuSequence::zeros(std::size_t frames, double rate) {
  ImuSequence s;
  s.frame_rate = rate;
  s.n_frames = frames;
  s.data.assign(frames * kJointCount * 6, 0.0);
  s.observed_mask.fill(1);
  return s;
}

bool ImuSequence::finite() const {
  return std::all_of(data.begin(), data.end(),
                     [](double v) { return std::isfinite(v); });
}

bool ImuSequence::mask_consistent() const {
  for (int j = 0; j < kJointCount; ++j) {
    if (observed_mask[j]) continue;
    for (std::size_t f = 0; f < n_frames; ++f) {
      const double* c = channels(f, j);
      for (int k = 0; k < 6; ++k)
        if (c[k] != 0.0) return false;
    }
  }
  return true;
}

MotionSequence resample(const MotionSequence& seq, double target_rate) {
  if (seq.n_frames == 0) throw Error(Errc::EmptySequence, "resample");
  if (!(target_rate > 0.0))
    throw Error(Errc::InvalidArgument, "target rate must be positive");

  // scale == 1 exactly when rates match, so the identity case copies frames.
  const double scale = seq.frame_rate / target_rate;
  const std::size_t n_out =
      std::size_t(std::floor(seq.duration() * target_rate + 1e-9)) + 1;

  MotionSequence out = MotionSequence::zeros(n_out, target_rate);
  for (std::size_t i = 0; i < n_out; ++i) {
    double s = double(i) * scale;
    if (s > double(seq.n_frames - 1)) s = double(seq.n_frames - 1);
    std::size_t lo = std::size_t(std::floor(s));
    if (lo >= seq.n_frames - 1 && seq.n_frames >= 2) lo = seq.n_frames - 2;
    if (seq.n_frames == 1) lo = 0;
    const double alpha = s - double(lo);
    const std::size_t hi = std::min(lo + 1, seq.n_frames - 1);
    for (int j = 0; j < kJointCount; ++j) {
      const Vec3 a = seq.pos(lo, j);
      const Vec3 b = seq.pos(hi, j);
      out.set_pos(i, j, alpha == 0.0 ? a : a + (b - a) * alpha);
    }
  }
  return out;
}

ImuSequence window(const ImuSequence& seq, std::size_t length, WindowMode mode,
                   std::uint64_t seed) {
  if (length < 1) throw Error(Errc::InvalidArgument, "window length must be >= 1");

  ImuSequence out = ImuSequence::zeros(length, seq.frame_rate);
  out.observed_mask = seq.observed_mask;

  std::size_t offset = 0;
  if (seq.n_frames > length) {
    const std::size_t slack = seq.n_frames - length;
    switch (mode) {
      case WindowMode::CenterCrop: offset = slack / 2; break;
      case WindowMode::RandomCrop: {
        Rng rng(seed);
        offset = rng.uniform_index(slack + 1);
        break;
      }
      case WindowMode::Pad: offset = 0; break;
    }
  }

  const std::size_t copy = std::min(length, seq.n_frames);
  std::copy_n(seq.data.begin() + offset * kJointCount * 6,
              copy * kJointCount * 6, out.data.begin());
  return out;
}

}  // namespace vimu
