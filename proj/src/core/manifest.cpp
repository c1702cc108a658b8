#include "vimu/manifest.hpp"

#include <fstream>
#include <unordered_set>

#include "vimu/common.hpp"

namespace vimu {

using nlohmann::json;

json TextMotionRecord::to_json() const {
  json j = extra.is_object() ? extra : json::object();
  j["id"] = id;
  j["texts"] = texts;
  if (!motion_ref.empty()) j["motion_ref"] = motion_ref;
  else j.erase("motion_ref");
  if (!imu_ref.empty()) j["imu_ref"] = imu_ref;
  else j.erase("imu_ref");
  if (!label.empty()) j["label"] = label;
  j["source"] = source;
  j["generator_tag"] = generator_tag;
  j["seed"] = seed;
  if (!split.empty()) j["split"] = split;
  return j;
}

TextMotionRecord TextMotionRecord::from_json(const json& j) {
  TextMotionRecord r;
  r.extra = j;
  r.id = j.at("id").get<std::string>();
  r.texts = j.at("texts").get<std::vector<std::string>>();
  if (r.texts.empty())
    throw Error(Errc::InvalidArgument, "record " + r.id + " has no texts");
  if (j.contains("motion_ref")) r.motion_ref = j["motion_ref"].get<std::string>();
  if (j.contains("imu_ref")) r.imu_ref = j["imu_ref"].get<std::string>();
  if (r.motion_ref.empty() == r.imu_ref.empty())
    throw Error(Errc::InvalidArgument,
                "record " + r.id + " must reference exactly one payload");
  if (j.contains("label")) r.label = j["label"].get<std::string>();
  r.source = j.value("source", std::string{});
  r.generator_tag = j.value("generator_tag", std::string{});
  r.seed = j.value("seed", std::uint64_t{0});
  r.split = j.value("split", std::string{});
  return r;
}

std::vector<std::string> DatasetManifest::split_tags() const {
  std::vector<std::string> tags;
  std::unordered_set<std::string> seen;
  for (const auto& r : records) {
    if (r.split.empty() || !seen.insert(r.split).second) continue;
    tags.push_back(r.split);
  }
  return tags;
}

void DatasetManifest::check_ids_unique() const {
  std::unordered_set<std::string> seen;
  for (const auto& r : records)
    if (!seen.insert(r.id).second)
      throw Error(Errc::InvalidArgument, "duplicate record id " + r.id);
}

void write_manifest(const std::filesystem::path& path,
                    const DatasetManifest& m) {
  m.check_ids_unique();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoFailure, "cannot open " + path.string());
  for (const auto& r : m.records) out << r.to_json().dump() << '\n';
  if (!out) throw Error(Errc::IoFailure, "short write to " + path.string());

  const ManifestMeta& meta = m.meta;
  const bool have_meta = meta.creation_seed != 0 || !meta.tool_version.empty() ||
                         !meta.config_digest.empty() || !meta.created_at.empty();
  if (have_meta) {
    json j;
    j["creation_seed"] = meta.creation_seed;
    j["tool_version"] = meta.tool_version;
    if (!meta.config_digest.empty()) j["config_digest"] = meta.config_digest;
    if (!meta.created_at.empty()) j["created_at"] = meta.created_at;
    std::ofstream mo(path.string() + ".meta.json",
                     std::ios::binary | std::ios::trunc);
    if (!mo) throw Error(Errc::IoFailure, "cannot open meta for " + path.string());
    mo << j.dump(2) << '\n';
  }
}

DatasetManifest read_manifest(const std::filesystem::path& path,
                              bool check_refs) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());

  DatasetManifest m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw Error(Errc::InvalidArgument,
                  path.string() + ":" + std::to_string(lineno) +
                      ": malformed JSON");
    m.records.push_back(TextMotionRecord::from_json(j));
  }
  m.check_ids_unique();

  if (check_refs) {
    const auto dir = path.parent_path();
    for (const auto& r : m.records) {
      const std::string& ref = r.motion_ref.empty() ? r.imu_ref : r.motion_ref;
      if (!std::filesystem::exists(dir / ref))
        throw Error(Errc::IoFailure,
                    "record " + r.id + " references missing file " + ref);
    }
  }

  const auto meta_path = path.string() + ".meta.json";
  if (std::filesystem::exists(meta_path)) {
    std::ifstream mi(meta_path, std::ios::binary);
    json j = json::parse(mi, nullptr, false);
    if (!j.is_discarded()) {
      m.meta.creation_seed = j.value("creation_seed", std::uint64_t{0});
      m.meta.tool_version = j.value("tool_version", std::string{});
      m.meta.config_digest = j.value("config_digest", std::string{});
      m.meta.created_at = j.value("created_at", std::string{});
    }
  }
  return m;
}

}  // namespace vimu
