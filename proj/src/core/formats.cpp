#include "vimu/formats.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include "vimu/common.hpp"

namespace vimu {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(std::uint8_t(v));
  out.push_back(std::uint8_t(v >> 8));
  out.push_back(std::uint8_t(v >> 16));
  out.push_back(std::uint8_t(v >> 24));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
  put_u32(out, std::bit_cast<std::uint32_t>(v));
}

class Reader {
 public:
  Reader(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());
    bytes_.assign(std::istreambuf_iterator<char>(in),
                  std::istreambuf_iterator<char>());
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = std::uint32_t(bytes_[pos_]) |
                      std::uint32_t(bytes_[pos_ + 1]) << 8 |
                      std::uint32_t(bytes_[pos_ + 2]) << 16 |
                      std::uint32_t(bytes_[pos_ + 3]) << 24;
    pos_ += 4;
    return v;
  }

  float f32() { return std::bit_cast<float>(u32()); }

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }

  void magic(const char* expect) {
    need(4);
    const char* p = reinterpret_cast<const char*>(bytes_.data() + pos_);
    if (std::memcmp(p, expect, 3) != 0)
      throw Error(Errc::BadMagic, std::string("expected ") + expect);
    if (p[3] != expect[3])
      throw Error(Errc::VersionMismatch,
                  std::string("format version '") + p[3] + "', expected '" +
                      expect[3] + "'");
    pos_ += 4;
  }

 private:
  void need(std::size_t n) {
    if (pos_ + n > bytes_.size())
      throw Error(Errc::TruncatedPayload,
                  "need " + std::to_string(n) + " bytes at offset " +
                      std::to_string(pos_) + ", file has " +
                      std::to_string(bytes_.size()));
  }

  std::vector<std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void write_file(const std::filesystem::path& path,
                const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoFailure, "cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
  if (!out) throw Error(Errc::IoFailure, "short write to " + path.string());
}

std::uint32_t rate_to_millihz(double rate) {
  return std::uint32_t(std::llround(rate * 1000.0));
}

}  // namespace

void write_motion(const std::filesystem::path& path, const MotionSequence& seq) {
  if (!seq.finite())
    throw Error(Errc::NonFiniteValue, "motion payload for " + path.string());
  std::vector<std::uint8_t> out;
  out.reserve(16 + seq.data.size() * 4);
  out.insert(out.end(), {'M', 'S', 'Q', '1'});
  put_u32(out, std::uint32_t(seq.n_frames));
  put_u32(out, kJointCount);
  put_u32(out, rate_to_millihz(seq.frame_rate));
  for (double v : seq.data) put_f32(out, float(v));
  write_file(path, out);
}

MotionSequence read_motion(const std::filesystem::path& path) {
  Reader r(path);
  r.magic("MSQ1");
  const std::uint32_t n_frames = r.u32();
  const std::uint32_t n_joints = r.u32();
  if (n_joints != kJointCount)
    throw Error(Errc::ShapeMismatch,
                "joint count " + std::to_string(n_joints) + " in " +
                    path.string());
  MotionSequence seq = MotionSequence::zeros(n_frames, r.u32() / 1000.0);
  for (double& v : seq.data) {
    v = double(r.f32());
    if (!std::isfinite(v))
      throw Error(Errc::NonFiniteValue, "motion payload in " + path.string());
  }
  return seq;
}

void write_imu(const std::filesystem::path& path, const ImuSequence& seq) {
  if (!seq.finite())
    throw Error(Errc::NonFiniteValue, "imu payload for " + path.string());
  if (!seq.mask_consistent())
    throw Error(Errc::InvalidArgument,
                "unobserved joints carry nonzero channels in " + path.string());
  std::vector<std::uint8_t> out;
  out.reserve(40 + seq.data.size() * 4);
  out.insert(out.end(), {'I', 'S', 'Q', '1'});
  put_u32(out, std::uint32_t(seq.n_frames));
  put_u32(out, kJointCount);
  put_u32(out, rate_to_millihz(seq.frame_rate));
  for (std::uint8_t m : seq.observed_mask) out.push_back(m ? 1 : 0);
  for (double v : seq.data) put_f32(out, float(v));
  write_file(path, out);
}

ImuSequence read_imu(const std::filesystem::path& path) {
  Reader r(path);
  r.magic("ISQ1");
  const std::uint32_t n_frames = r.u32();
  const std::uint32_t n_joints = r.u32();
  if (n_joints != kJointCount)
    throw Error(Errc::ShapeMismatch,
                "joint count " + std::to_string(n_joints) + " in " +
                    path.string());
  ImuSequence seq = ImuSequence::zeros(n_frames, r.u32() / 1000.0);
  for (int j = 0; j < kJointCount; ++j) seq.observed_mask[j] = r.u8();
  for (double& v : seq.data) {
    v = double(r.f32());
    if (!std::isfinite(v))
      throw Error(Errc::NonFiniteValue, "imu payload in " + path.string());
  }
  return seq;
}

}  // namespace vimu
