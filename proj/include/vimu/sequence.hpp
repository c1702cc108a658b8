#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vimu/geometry.hpp"
#include "vimu/skeleton.hpp"

namespace vimu {

// Joint-position trajectory: world-space meters, z up, [frame][joint][xyz].
// Positions are kept in double precision; the on-disk format quantizes to
// float32 (see formats.hpp).
struct MotionSequence {
  double frame_rate = 0.0;  // Hz
  std::size_t n_frames = 0;
  std::vector<double> data;  // n_frames * 24 * 3

  static MotionSequence zeros(std::size_t frames, double rate);

  Vec3 pos(std::size_t frame, int joint) const {
    const double* p = &data[(frame * kJointCount + joint) * 3];
    return {p[0], p[1], p[2]};
  }
  void set_pos(std::size_t frame, int joint, const Vec3& v) {
    double* p = &data[(frame * kJointCount + joint) * 3];
    p[0] = v.x;
    p[1] = v.y;
    p[2] = v.z;
  }

  double duration() const {
    return n_frames == 0 ? 0.0 : double(n_frames - 1) / frame_rate;
  }
  bool finite() const;
};

// Per-joint 6-channel inertial trajectory: channels 0-2 accelerometer
// specific force (m/s^2), 3-5 gyroscope angular velocity (rad/s), both in the
// joint's body frame. Joints with observed_mask 0 carry all-zero channels.
struct ImuSequence {
  double frame_rate = 0.0;
  std::size_t n_frames = 0;
  std::vector<double> data;  // n_frames * 24 * 6
  std::array<std::uint8_t, kJointCount> observed_mask{};

  static ImuSequence zeros(std::size_t frames, double rate);

  double* channels(std::size_t frame, int joint) {
    return &data[(frame * kJointCount + joint) * 6];
  }
  const double* channels(std::size_t frame, int joint) const {
    return &data[(frame * kJointCount + joint) * 6];
  }
  Vec3 accel(std::size_t frame, int joint) const {
    const double* c = channels(frame, joint);
    return {c[0], c[1], c[2]};
  }
  Vec3 gyro(std::size_t frame, int joint) const {
    const double* c = channels(frame, joint);
    return {c[3], c[4], c[5]};
  }
  void set_accel(std::size_t frame, int joint, const Vec3& v) {
    double* c = channels(frame, joint);
    c[0] = v.x;
    c[1] = v.y;
    c[2] = v.z;
  }
  void set_gyro(std::size_t frame, int joint, const Vec3& v) {
    double* c = channels(frame, joint);
    c[3] = v.x;
    c[4] = v.y;
    c[5] = v.z;
  }

  bool finite() const;
  // True iff every unobserved joint has all six channels exactly zero.
  bool mask_consistent() const;
};

// Linear resampling onto target_rate. Output duration equals the input
// duration to within one output frame period; an input already at
// target_rate is copied frame-for-frame.
MotionSequence resample(const MotionSequence& seq, double target_rate);

enum class WindowMode { RandomCrop, CenterCrop, Pad };

// Fixed-length temporal window. Inputs shorter than `length` are zero-padded
// at the tail regardless of mode; longer inputs are cropped (RandomCrop picks
// the offset from `seed`, Pad anchors at frame 0). Total on valid input.
ImuSequence window(const ImuSequence& seq, std::size_t length, WindowMode mode,
                   std::uint64_t seed = 0);

}  // namespace vimu
