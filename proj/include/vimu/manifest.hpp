#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace vimu {

// One text-motion (or label-motion) record. Exactly one of motion_ref /
// imu_ref is set at any pipeline stage; paths are relative to the manifest
// file. Unknown JSON fields survive a load/store round trip via `extra`.
struct TextMotionRecord {
  std::string id;
  std::vector<std::string> texts;  // non-empty
  std::string motion_ref;          // path to .mseq, or empty
  std::string imu_ref;             // path to .iseq, or empty
  std::string label;               // optional activity class
  std::string source;              // "real" | "synthetic"
  std::string generator_tag;
  std::uint64_t seed = 0;
  std::string split;               // optional split tag
  nlohmann::json extra;            // unknown fields, preserved verbatim

  nlohmann::json to_json() const;
  static TextMotionRecord from_json(const nlohmann::json& j);
};

struct ManifestMeta {
  std::uint64_t creation_seed = 0;
  std::string tool_version;
  std::string config_digest;
  std::string created_at;  // empty in deterministic mode
};

struct DatasetManifest {
  std::vector<TextMotionRecord> records;
  ManifestMeta meta;

  // Distinct split tags present on the records, in first-seen order.
  std::vector<std::string> split_tags() const;
  // Throws InvalidArgument on duplicate ids.
  void check_ids_unique() const;
};

// JSONL on disk: one record object per line, UTF-8. Metadata goes to a
// sidecar `<path>.meta.json` (omitted when meta is all-default).
// `check_refs` verifies every referenced payload path resolves relative to
// the manifest directory.
void write_manifest(const std::filesystem::path& path, const DatasetManifest& m);
DatasetManifest read_manifest(const std::filesystem::path& path,
                              bool check_refs = true);

}  // namespace vimu
