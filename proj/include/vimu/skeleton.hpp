#pragma once

#include <array>
#include <optional>
#include <string>

#include "vimu/geometry.hpp"

namespace vimu {

inline constexpr int kJointCount = 24;

// Fixed 24-joint kinematic tree in the SMPL joint ordering. Joint 0 is the
// pelvis root (parent -1); rest_lengths[0] is 0 by convention.
struct Skeleton {
  int joint_count = kJointCount;
  std::array<int, kJointCount> parent{};
  std::array<std::string, kJointCount> joint_names{};
  std::array<double, kJointCount> rest_lengths{};  // meters

  int first_child(int joint) const {
    for (int j = 0; j < kJointCount; ++j)
      if (parent[j] == joint) return j;
    return -1;
  }
};

struct SkeletonIssue {
  enum class Code { CycleDetected, MultipleRoots, NonPositiveBoneLength };
  Code code;
  std::string message;  // names the first violated invariant
};

// nullopt iff every Skeleton invariant holds. MultipleRoots also covers the
// no-root case (zero entries equal to -1).
std::optional<SkeletonIssue> validate_skeleton(const Skeleton& skel);

// The canonical tree shipped with the pipeline: SMPL joint order, z-up rest
// pose, bone lengths of an average adult in meters.
const Skeleton& canonical_skeleton();

// World-frame rest offset of each joint relative to its parent (root entry is
// its absolute position: standing, facing +x, z up). The generator poses the
// body by rotating these offsets, which preserves bone lengths exactly.
const std::array<Vec3, kJointCount>& canonical_rest_offsets();

}  // namespace vimu
