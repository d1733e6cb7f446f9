#include "posedir/jsonl.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace posedir {

using nlohmann::json;

namespace {

double f32_round(double v) { return static_cast<double>(static_cast<float>(v)); }

json frames_to_json(const std::vector<PoseVector>& frames, int count) {
  json arr = json::array();
  for (int t = 0; t < count; ++t) {
    json row = json::array();
    for (int i = 0; i < kPoseDim; ++i) row.push_back(f32_round(frames[t].values[i]));
    arr.push_back(std::move(row));
  }
  return arr;
}

json masks_to_json(const std::vector<PoseVector>& frames, int count) {
  json arr = json::array();
  for (int t = 0; t < count; ++t) {
    json row = json::array();
    for (int i = 0; i < kPoseDim; ++i) row.push_back(frames[t].mask[i] ? 1 : 0);
    arr.push_back(std::move(row));
  }
  return arr;
}

void frames_from_json(const json& vals, const json& masks, std::vector<PoseVector>& out) {
  if (!vals.is_array() || !masks.is_array() || vals.size() != masks.size())
    throw StructuralError("frames/mask arrays malformed");
  out.assign(vals.size(), PoseVector{});
  for (std::size_t t = 0; t < vals.size(); ++t) {
    const json& row = vals[t];
    const json& mrow = masks[t];
    if (row.size() != kPoseDim || mrow.size() != kPoseDim)
      throw StructuralError("frame row is not 36 wide");
    for (int i = 0; i < kPoseDim; ++i) {
      out[t].values[i] = row[i].get<double>();
      out[t].mask[i] = mrow[i].get<int>() != 0;
    }
  }
}

}  // namespace

std::string sequence_record_to_json(const SequenceRecord& rec) {
  json j;
  j["prompt"] = rec.prompt;
  j["class_id"] = rec.class_id;
  j["valid_len"] = rec.sequence.valid_len;
  j["frames"] = frames_to_json(rec.sequence.frames, kSeqLen);
  j["mask"] = masks_to_json(rec.sequence.frames, kSeqLen);
  return j.dump();
}

SequenceRecord sequence_record_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw StructuralError(std::string("bad sequence record: ") + e.what());
  }
  SequenceRecord rec;
  rec.prompt = j.at("prompt").get<std::string>();
  rec.class_id = j.at("class_id").get<int>();
  rec.sequence.valid_len = j.at("valid_len").get<int>();
  frames_from_json(j.at("frames"), j.at("mask"), rec.sequence.frames);
  if (static_cast<int>(rec.sequence.frames.size()) != kSeqLen)
    throw StructuralError("sequence record does not hold 200 frames");
  rec.sequence.validate();
  return rec;
}

void write_jsonl(const std::string& path, const std::vector<SequenceRecord>& recs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& rec : recs) out << sequence_record_to_json(rec) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

std::vector<SequenceRecord> read_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::vector<SequenceRecord> recs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    recs.push_back(sequence_record_from_json(line));
  }
  return recs;
}

std::string keyframes_to_json(const KeyframeSet& kf) {
  json j;
  json poses = json::array(), masks = json::array(), idx = json::array();
  for (int k = 0; k < kNumKeyframes; ++k) {
    json row = json::array(), mrow = json::array();
    for (int i = 0; i < kPoseDim; ++i) {
      row.push_back(f32_round(kf.poses[k].values[i]));
      mrow.push_back(kf.poses[k].mask[i] ? 1 : 0);
    }
    poses.push_back(std::move(row));
    masks.push_back(std::move(mrow));
    idx.push_back(kf.source_indices[k]);
  }
  j["poses"] = std::move(poses);
  j["mask"] = std::move(masks);
  j["source_indices"] = std::move(idx);
  return j.dump(2);
}

KeyframeSet keyframes_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw StructuralError(std::string("bad keyframes file: ") + e.what());
  }
  KeyframeSet kf;
  const json& poses = j.at("poses");
  if (poses.size() != kNumKeyframes) throw StructuralError("expected 20 keyframes");
  const json* masks = j.contains("mask") ? &j.at("mask") : nullptr;
  for (int k = 0; k < kNumKeyframes; ++k) {
    const json& row = poses[k];
    if (row.size() != kPoseDim) throw StructuralError("keyframe row is not 36 wide");
    for (int i = 0; i < kPoseDim; ++i) {
      kf.poses[k].values[i] = row[i].get<double>();
      kf.poses[k].mask[i] = masks ? (*masks)[k][i].get<int>() != 0 : true;
    }
    kf.source_indices[k] = j.contains("source_indices")
                               ? j.at("source_indices")[k].get<int>()
                               : k * kKeyframeStride;
  }
  return kf;
}

void write_keyframes(const std::string& path, const KeyframeSet& kf) {
  write_text_file(path, keyframes_to_json(kf));
}

KeyframeSet read_keyframes(const std::string& path) {
  return keyframes_from_json(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace posedir
