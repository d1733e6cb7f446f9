#ifndef POSEDIR_JSONL_HPP_
#define POSEDIR_JSONL_HPP_

#include "posedir/pose.hpp"

#include <string>
#include <vector>

namespace posedir {

// One JSON object per line: prompt, class_id, valid_len,
// frames (200x36 floats), mask (200x36 as 0/1). Values are rounded to
// 32-bit floats before serialization so files are digest-stable.
struct SequenceRecord {
  std::string prompt;
  int class_id = -1;
  PoseSequence sequence;
};

std::string sequence_record_to_json(const SequenceRecord& rec);
SequenceRecord sequence_record_from_json(const std::string& line);

void write_jsonl(const std::string& path, const std::vector<SequenceRecord>& recs);
std::vector<SequenceRecord> read_jsonl(const std::string& path);

// Keyframe file: poses (20x36), mask (20x36 as 0/1), source_indices.
std::string keyframes_to_json(const KeyframeSet& kf);
KeyframeSet keyframes_from_json(const std::string& text);
void write_keyframes(const std::string& path, const KeyframeSet& kf);
KeyframeSet read_keyframes(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace posedir

#endif  // POSEDIR_JSONL_HPP_
