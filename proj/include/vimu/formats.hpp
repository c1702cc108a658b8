#pragma once

#include <filesystem>

#include "vimu/sequence.hpp"

namespace vimu {

// Binary motion/IMU formats. Both are little-endian and carry float32
// payloads; reading yields doubles numerically equal to the stored floats,
// so read(write(read(f))) == read(f) bit-exactly.
//
//   MSEQ: "MSQ1" | u32 n_frames | u32 n_joints(=24) | u32 frame_rate_millihz
//         | f32 positions[frame][joint][x,y,z]
//   ISEQ: "ISQ1" | u32 n_frames | u32 n_joints(=24) | u32 frame_rate_millihz
//         | u8 observed_mask[24] | f32 channels[frame][joint][ax..gz]
//
// Errors: BadMagic (unknown family), VersionMismatch (known family, other
// version digit), TruncatedPayload, NonFiniteValue, IoFailure.

void write_motion(const std::filesystem::path& path, const MotionSequence& seq);
MotionSequence read_motion(const std::filesystem::path& path);

void write_imu(const std::filesystem::path& path, const ImuSequence& seq);
ImuSequence read_imu(const std::filesystem::path& path);

}  // namespace vimu
