#include "vimu/imu_sim.hpp"

#include <cmath>
#include <string>

#include "vimu/common.hpp"

namespace vimu {
namespace {

constexpr double kBoneEps = 1e-9;      // below this the bone is degenerate
constexpr double kParallelEps = 1e-6;  // cross-norm threshold for fallback

Quat frame_from_bone(const Vec3& bone, const Vec3& up) {
  const double len = bone.norm();
  if (len < kBoneEps)
    throw Error(Errc::DegenerateBone,
                "bone vector norm " + std::to_string(len));
  const Vec3 y = bone / len;

  Vec3 x = up.cross(y);
  if (x.norm() < kParallelEps) x = Vec3{1.0, 0.0, 0.0}.cross(y);
  x = x.normalized();
  const Vec3 z = x.cross(y);
  return Quat::from_axes(x, y, z);
}

}  // namespace

OrientationTrack estimate_orientations(const MotionSequence& seq,
                                       const Skeleton& skel,
                                       const SimOptions& opts) {
  OrientationTrack track;
  track.n_frames = seq.n_frames;
  track.quats.resize(seq.n_frames * kJointCount);

  for (std::size_t f = 0; f < seq.n_frames; ++f) {
    for (int j = 0; j < kJointCount; ++j) {
      int from = skel.parent[j];
      int to = j;
      if (from == -1) {
        from = j;
        to = skel.first_child(j);
      }
      const Vec3 bone = seq.pos(f, to) - seq.pos(f, from);
      Quat q = frame_from_bone(bone, opts.up_reference);
      if (f == 0) {
        if (q.w < 0.0) q = -q;
      } else if (q.dot(track.q(f - 1, j)) < 0.0) {
        q = -q;
      }
      track.q(f, j) = q;
    }
  }
  return track;
}

Vec3 angular_velocity_step(const Quat& q_t, const Quat& q_next, double dt) {
  const Quat rel = q_t.conjugate() * q_next;
  return rel.rotation_vector() / dt;
}

Vec3 specific_force_step(const Vec3& p_prev, const Vec3& p, const Vec3& p_next,
                         double dt, const Quat& q, const SimOptions& opts) {
  const Vec3 accel = (p_next - p * 2.0 + p_prev) / (dt * dt);
  const Vec3 f = opts.include_gravity ? accel - opts.gravity : accel;
  return q.rotate_inverse(f);
}

ImuSequence simulate_imu(const MotionSequence& seq, const Skeleton& skel,
                         const SimOptions& opts) {
  if (seq.n_frames < 3)
    throw Error(Errc::TooFewFrames, "simulate_imu needs >= 3 frames, got " +
                                        std::to_string(seq.n_frames));

  const OrientationTrack track = estimate_orientations(seq, skel, opts);
  const double dt = 1.0 / seq.frame_rate;
  const std::size_t n = seq.n_frames;

  ImuSequence out = ImuSequence::zeros(n, seq.frame_rate);
  std::vector<Vec3> accel(n);
  for (int j = 0; j < kJointCount; ++j) {
    for (std::size_t f = 1; f + 1 < n; ++f) {
      accel[f] =
          (seq.pos(f + 1, j) - seq.pos(f, j) * 2.0 + seq.pos(f - 1, j)) /
          (dt * dt);
    }
    accel[0] = accel[1];
    accel[n - 1] = accel[n - 2];

    for (std::size_t f = 0; f < n; ++f) {
      const Quat q = track.q(f, j);
      const Vec3 force =
          opts.include_gravity ? accel[f] - opts.gravity : accel[f];
      out.set_accel(f, j, q.rotate_inverse(force));

      const Vec3 omega =
          f + 1 < n ? angular_velocity_step(q, track.q(f + 1, j), dt)
                    : out.gyro(f - 1, j);
      out.set_gyro(f, j, omega);
    }
  }
  return out;
}

}  // namespace vimu
