#pragma once

#include <vector>

#include "vimu/geometry.hpp"
#include "vimu/sequence.hpp"
#include "vimu/skeleton.hpp"

namespace vimu {

// Per-frame body-to-world rotation of every joint. Quaternions are unit norm
// and hemisphere-continuous in time (consecutive dot >= 0 per joint).
struct OrientationTrack {
  std::size_t n_frames = 0;
  std::vector<Quat> quats;  // n_frames * 24

  Quat q(std::size_t frame, int joint) const {
    return quats[frame * kJointCount + joint];
  }
  Quat& q(std::size_t frame, int joint) {
    return quats[frame * kJointCount + joint];
  }
};

struct SimOptions {
  Vec3 gravity{0.0, 0.0, -9.81};      // m/s^2, world frame
  Vec3 up_reference{0.0, 0.0, 1.0};   // unit, world frame
  bool include_gravity = true;
};

// Body frame of each joint from the pose alone: body y-axis points from the
// parent to the joint (the root borrows its first child's bone), body x is
// normalize(up x y), body z completes the right-handed frame. When the bone
// is parallel to up (cross norm < 1e-6) the world x-axis replaces up as the
// reference. Throws DegenerateBone when a bone vector collapses below 1e-9 m.
OrientationTrack estimate_orientations(const MotionSequence& seq,
                                       const Skeleton& skel,
                                       const SimOptions& opts = {});

// Constant body-frame angular rate realizing the rotation from q_t to q_next
// over dt: (2/dt) * log(q_t^-1 * q_next).
Vec3 angular_velocity_step(const Quat& q_t, const Quat& q_next, double dt);

// Accelerometer reading for one joint at one interior frame: central
// difference world acceleration, minus gravity when enabled, rotated into the
// body frame.
Vec3 specific_force_step(const Vec3& p_prev, const Vec3& p, const Vec3& p_next,
                         double dt, const Quat& q, const SimOptions& opts = {});

// Full mocap -> IMU mapping. Gyroscope uses forward differences (last frame
// repeats the previous value); accelerometer uses central differences with
// endpoint frames copying the nearest interior world acceleration. Output
// frame count and rate match the input; observed_mask is all true.
// Requires >= 3 frames (TooFewFrames).
ImuSequence simulate_imu(const MotionSequence& seq, const Skeleton& skel,
                         const SimOptions& opts = {});

}  // namespace vimu
