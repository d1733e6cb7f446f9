#ifndef POSEDIR_CORPUS_HPP_
#define POSEDIR_CORPUS_HPP_

#include "posedir/jsonl.hpp"
#include "posedir/pose.hpp"
#include "posedir/rng.hpp"

#include <string>
#include <vector>

namespace posedir {

enum class MotionClassId : int {
  kWalking = 0,
  kRunning = 1,
  kJumping = 2,
  kWaving = 3,
  kSquatting = 4,
  kUnknown = -1,
};
inline constexpr int kNumMotionClasses = 5;

const char* motion_class_name(MotionClassId id);
MotionClassId motion_class_from_verb(const std::string& verb);

struct ParamRange {
  double lo, hi;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

// Per-class oscillator parameters. Ranges are disjoint across classes on the
// statistics the oracle reads, which is what makes rule-based labeling exact.
struct MotionClassSpec {
  MotionClassId id;
  const char* name;
  ParamRange freq_hz;     // dominant oscillation frequency
  ParamRange limb_amp;    // primary limb amplitude, normalized units
  ParamRange bounce_amp;  // vertical oscillation amplitude
  std::vector<std::string> verbs;
};

const std::vector<MotionClassSpec>& motion_class_specs();
const MotionClassSpec& motion_class_spec(MotionClassId id);

struct GaitParams {
  double freq_hz = 0.0;
  double limb_amp = 0.0;
  double bounce_amp = 0.0;
};

GaitParams draw_gait_params(MotionClassId id, Rng& rng);

// Deterministic sinusoidal-oscillator animation around a base skeleton,
// cropped/padded to 200 frames. 2-8% of keypoints are dropped per sequence to
// exercise masked losses.
PoseSequence generate_motion(MotionClassId id, const GaitParams& params,
                             std::uint64_t seed);

std::string generate_prompt(MotionClassId id, std::uint64_t seed);

// --- toy tokenizer -------------------------------------------------------
inline constexpr int kUnkTokenId = 0;

int text_vocab_size();
const std::vector<std::string>& text_vocab();
std::string normalize_text(const std::string& s);
std::vector<int> tokenize_prompt(const std::string& s);
std::string detokenize(const std::vector<int>& ids);

// --- oracle classifier ----------------------------------------------------
struct OracleFeatures {
  double ankle_sep_std = 0.0;   // lateral leg swing
  double ankle_sep_freq = 0.0;  // Hz, 0 when unreliable
  double hip_y_std = 0.0;
  double hip_y_skew = 0.0;
  double hip_y_freq = 0.0;
  double wrist_std = 0.0;  // oscillation of the livelier wrist, relative to its shoulder
  double wrist_freq = 0.0;
};

OracleFeatures oracle_features(const PoseSequence& seq);
MotionClassId oracle_classify(const PoseSequence& seq);

// --- dataset ---------------------------------------------------------------
struct CorpusExample {
  std::string prompt;
  MotionClassId class_id = MotionClassId::kUnknown;
  PoseSequence sequence;
  KeyframeSet keyframes;
};

CorpusExample make_example(MotionClassId id, std::uint64_t corpus_seed, int index);

enum class Split { kTrain = 0, kVal = 1, kTest = 2 };
const char* split_name(Split s);
// Seed-derived 80/10/10 hash split; stable across runs for a given
// (seed, class, index) identity.
Split split_of(std::uint64_t corpus_seed, MotionClassId id, int index);

struct CorpusPaths {
  std::string train, val, test, manifest;
};
CorpusPaths corpus_paths(const std::string& dir);

// Writes train/val/test JSONL plus manifest.json (seed, counts, class ranges,
// per-split digests). Every example is checked against its own invariants
// (keyframes match, oracle label matches) before it is written.
void build_dataset(int n_per_class, std::uint64_t seed, const std::string& out_dir);

}  // namespace posedir

#endif  // POSEDIR_CORPUS_HPP_
