#include "vimu/skeleton.hpp"

#include <cmath>

#include "vimu/common.hpp"

namespace vimu {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::BadMagic: return "BadMagic";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::TruncatedPayload: return "TruncatedPayload";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::IoFailure: return "IoFailure";
    case Errc::EmptySequence: return "EmptySequence";
    case Errc::TooFewFrames: return "TooFewFrames";
    case Errc::DegenerateBone: return "DegenerateBone";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::InsufficientRecords: return "InsufficientRecords";
    case Errc::EmptyResult: return "EmptyResult";
    case Errc::DegenerateBatch: return "DegenerateBatch";
    case Errc::NonFiniteLoss: return "NonFiniteLoss";
    case Errc::EmptyTrainSet: return "EmptyTrainSet";
    case Errc::UnknownJointName: return "UnknownJointName";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ConfigError: return "ConfigError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

std::optional<SkeletonIssue> validate_skeleton(const Skeleton& skel) {
  using Code = SkeletonIssue::Code;

  int roots = 0;
  for (int j = 0; j < kJointCount; ++j) {
    if (skel.parent[j] == -1) ++roots;
  }
  if (roots != 1) {
    return SkeletonIssue{Code::MultipleRoots,
                         "expected exactly one root (parent -1), found " +
                             std::to_string(roots)};
  }

  // Walk each joint to the root; more than kJointCount hops means a cycle.
  // Out-of-range parents count as structural failures too.
  for (int j = 0; j < kJointCount; ++j) {
    int cur = j;
    for (int hops = 0; cur != -1; ++hops) {
      if (hops > kJointCount) {
        return SkeletonIssue{Code::CycleDetected,
                             "cycle reachable from joint " + std::to_string(j)};
      }
      const int p = skel.parent[cur];
      if (p != -1 && (p < 0 || p >= kJointCount)) {
        return SkeletonIssue{Code::CycleDetected,
                             "parent index out of range at joint " +
                                 std::to_string(cur)};
      }
      cur = p;
    }
  }

  for (int j = 0; j < kJointCount; ++j) {
    if (skel.parent[j] == -1) continue;
    const double len = skel.rest_lengths[j];
    if (!(len > 0.0) || !std::isfinite(len)) {
      return SkeletonIssue{Code::NonPositiveBoneLength,
                           "rest length of joint " + std::to_string(j) + " (" +
                               skel.joint_names[j] + ") is not positive"};
    }
  }
  return std::nullopt;
}

namespace {

// SMPL joint order, z-up world, body facing +x, left side on +y.
// Offsets are parent-relative except the root, which is absolute.
struct JointSpec {
  const char* name;
  int parent;
  Vec3 offset;
};

constexpr int kNumSpecs = 24;
const JointSpec kCanonical[kNumSpecs] = {
    {"pelvis", -1, {0.0, 0.0, 0.95}},
    {"left_hip", 0, {0.0, 0.09, -0.06}},
    {"right_hip", 0, {0.0, -0.09, -0.06}},
    {"spine1", 0, {0.0, 0.0, 0.11}},
    {"left_knee", 1, {0.0, 0.0, -0.38}},
    {"right_knee", 2, {0.0, 0.0, -0.38}},
    {"spine2", 3, {0.0, 0.0, 0.12}},
    {"left_ankle", 4, {0.0, 0.0, -0.40}},
    {"right_ankle", 5, {0.0, 0.0, -0.40}},
    {"spine3", 6, {0.0, 0.0, 0.12}},
    {"left_foot", 7, {0.13, 0.0, -0.05}},
    {"right_foot", 8, {0.13, 0.0, -0.05}},
    {"neck", 9, {0.0, 0.0, 0.14}},
    {"left_collar", 9, {0.0, 0.08, 0.06}},
    {"right_collar", 9, {0.0, -0.08, 0.06}},
    {"head", 12, {0.0, 0.0, 0.12}},
    {"left_shoulder", 13, {0.0, 0.10, 0.0}},
    {"right_shoulder", 14, {0.0, -0.10, 0.0}},
    {"left_elbow", 16, {0.0, 0.26, 0.0}},
    {"right_elbow", 17, {0.0, -0.26, 0.0}},
    {"left_wrist", 18, {0.0, 0.25, 0.0}},
    {"right_wrist", 19, {0.0, -0.25, 0.0}},
    {"left_hand", 20, {0.0, 0.08, 0.0}},
    {"right_hand", 21, {0.0, -0.08, 0.0}},
};

Skeleton build_canonical() {
  Skeleton s;
  for (int j = 0; j < kJointCount; ++j) {
    s.parent[j] = kCanonical[j].parent;
    s.joint_names[j] = kCanonical[j].name;
    s.rest_lengths[j] = (j == 0) ? 0.0 : kCanonical[j].offset.norm();
  }
  return s;
}

std::array<Vec3, kJointCount> build_offsets() {
  std::array<Vec3, kJointCount> o{};
  for (int j = 0; j < kJointCount; ++j) o[j] = kCanonical[j].offset;
  return o;
}

}  // namespace

const Skeleton& canonical_skeleton() {
  static const Skeleton s = build_canonical();
  return s;
}

const std::array<Vec3, kJointCount>& canonical_rest_offsets() {
  static const std::array<Vec3, kJointCount> o = build_offsets();
  return o;
}

}  // namespace vimu
