#include "posedir/corpus.hpp"

#include "posedir/sha256.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>

namespace posedir {

using nlohmann::json;

const char* motion_class_name(MotionClassId id) {
  switch (id) {
    case MotionClassId::kWalking: return "walking";
    case MotionClassId::kRunning: return "running";
    case MotionClassId::kJumping: return "jumping";
    case MotionClassId::kWaving: return "waving";
    case MotionClassId::kSquatting: return "squatting";
    default: return "unknown";
  }
}

const std::vector<MotionClassSpec>& motion_class_specs() {
  // Frequency and amplitude ranges are disjoint across the statistics the
  // oracle reads; margins survive the +-5% per-example body scale.
  static const std::vector<MotionClassSpec> specs = {
      {MotionClassId::kWalking, "walking", {0.50, 0.75}, {0.05, 0.09},
       {0.004, 0.010}, {"walking", "strolling"}},
      {MotionClassId::kRunning, "running", {1.10, 1.45}, {0.11, 0.17},
       {0.018, 0.032}, {"running", "jogging"}},
      {MotionClassId::kJumping, "jumping", {0.55, 0.80}, {0.06, 0.12},
       {0.10, 0.16}, {"jumping", "hopping"}},
      {MotionClassId::kWaving, "waving", {2.00, 2.40}, {0.09, 0.14},
       {0.0008, 0.002}, {"waving", "gesturing"}},
      {MotionClassId::kSquatting, "squatting", {0.25, 0.40}, {0.04, 0.08},
       {0.10, 0.17}, {"squatting", "crouching"}},
  };
  return specs;
}

const MotionClassSpec& motion_class_spec(MotionClassId id) {
  for (const auto& s : motion_class_specs())
    if (s.id == id) return s;
  throw ValidationError("unknown motion class");
}

MotionClassId motion_class_from_verb(const std::string& verb) {
  for (const auto& s : motion_class_specs())
    for (const auto& v : s.verbs)
      if (v == verb) return s.id;
  return MotionClassId::kUnknown;
}

GaitParams draw_gait_params(MotionClassId id, Rng& rng) {
  const auto& spec = motion_class_spec(id);
  GaitParams p;
  p.freq_hz = rng.uniform(spec.freq_hz.lo, spec.freq_hz.hi);
  p.limb_amp = rng.uniform(spec.limb_amp.lo, spec.limb_amp.hi);
  p.bounce_amp = rng.uniform(spec.bounce_amp.lo, spec.bounce_amp.hi);
  return p;
}

namespace {

// Base standing skeleton, canvas coordinates (y grows downward).
const double kBaseSkeleton[kNumKeypoints][2] = {
    {0.50, 0.22},  // nose
    {0.50, 0.30},  // neck
    {0.42, 0.30}, {0.40, 0.42}, {0.39, 0.53},  // right arm
    {0.58, 0.30}, {0.60, 0.42}, {0.61, 0.53},  // left arm
    {0.45, 0.55}, {0.45, 0.72}, {0.45, 0.88},  // right leg
    {0.55, 0.55}, {0.55, 0.72}, {0.55, 0.88},  // left leg
    {0.48, 0.20}, {0.52, 0.20},                // eyes
    {0.46, 0.21}, {0.54, 0.21},                // ears
};

inline double relu(double v) { return v > 0.0 ? v : 0.0; }

struct JointFrame {
  double x[kNumKeypoints];
  double y[kNumKeypoints];
};

JointFrame pose_at(MotionClassId id, const GaitParams& p, double phase0, int t) {
  JointFrame f;
  for (int k = 0; k < kNumKeypoints; ++k) {
    f.x[k] = kBaseSkeleton[k][0];
    f.y[k] = kBaseSkeleton[k][1];
  }
  const double theta = 2.0 * M_PI * p.freq_hz * t / kFps + phase0;
  const double s = std::sin(theta);
  switch (id) {
    case MotionClassId::kWalking:
    case MotionClassId::kRunning: {
      const double a = p.limb_amp, arm = 0.7 * a;
      f.x[kAnkleR] += a * s;
      f.x[kAnkleL] -= a * s;
      f.x[kKneeR] += 0.5 * a * s;
      f.x[kKneeL] -= 0.5 * a * s;
      f.y[kAnkleR] -= 0.2 * a * relu(s);
      f.y[kAnkleL] -= 0.2 * a * relu(-s);
      f.x[kWristR] -= arm * s;
      f.x[kWristL] += arm * s;
      f.x[kElbowR] -= 0.5 * arm * s;
      f.x[kElbowL] += 0.5 * arm * s;
      const double bounce = p.bounce_amp * std::sin(2.0 * theta);
      for (int k = 0; k < kNumKeypoints; ++k) f.y[k] += bounce;
      break;
    }
    case MotionClassId::kJumping: {
      const double lift = relu(s);
      const double h = p.bounce_amp * lift * lift * lift;  // airborne bursts
      const double u = lift * lift * lift;
      for (int k = 0; k < kNumKeypoints; ++k) f.y[k] -= h;
      f.y[kWristR] -= p.limb_amp * u;
      f.y[kWristL] -= p.limb_amp * u;
      f.y[kElbowR] -= 0.5 * p.limb_amp * u;
      f.y[kElbowL] -= 0.5 * p.limb_amp * u;
      f.x[kWristR] -= 0.3 * p.limb_amp * u;
      f.x[kWristL] += 0.3 * p.limb_amp * u;
      f.y[kKneeR] -= 0.25 * h;
      f.y[kKneeL] -= 0.25 * h;
      break;
    }
    case MotionClassId::kWaving: {
      // right arm held up, hand above the shoulder
      f.x[kElbowR] = 0.40;
      f.y[kElbowR] = 0.33;
      f.x[kWristR] = 0.42;
      f.y[kWristR] = 0.20;
      f.x[kWristR] += p.limb_amp * s;
      f.y[kWristR] += 0.25 * p.limb_amp * std::cos(theta);
      f.x[kElbowR] += 0.3 * p.limb_amp * s;
      const double bounce = p.bounce_amp * s;
      for (int k = 0; k < kNumKeypoints; ++k) f.y[k] += bounce;
      break;
    }
    case MotionClassId::kSquatting: {
      const double half = std::sin(theta / 2.0);
      const double g = p.bounce_amp * half * half * half * half;  // dwell up top
      static const int torso[] = {kNose, kNeck, kShoulderR, kElbowR, kWristR,
                                  kShoulderL, kElbowL, kWristL, kHipR, kHipL,
                                  kEyeR, kEyeL, kEarR, kEarL};
      for (int k : torso) f.y[k] += g;
      f.y[kKneeR] += 0.45 * g;
      f.y[kKneeL] += 0.45 * g;
      f.x[kKneeR] -= 0.25 * g;
      f.x[kKneeL] += 0.25 * g;
      const double reach = p.limb_amp * (p.bounce_amp > 0 ? g / p.bounce_amp : 0.0);
      f.x[kWristR] -= reach;
      f.x[kWristL] += reach;
      break;
    }
    default:
      throw ValidationError("cannot generate unknown motion class");
  }
  return f;
}

}  // namespace

PoseSequence generate_motion(MotionClassId id, const GaitParams& p,
                             std::uint64_t seed) {
  const auto& spec = motion_class_spec(id);
  require(spec.freq_hz.contains(p.freq_hz), "freq_hz outside class range");
  require(spec.limb_amp.contains(p.limb_amp), "limb_amp outside class range");
  require(spec.bounce_amp.contains(p.bounce_amp), "bounce_amp outside class range");

  Rng rng(seed);
  const int raw_len = static_cast<int>(rng.uniform_int(160, kMaxRawLen));
  const double dx = rng.uniform(-0.06, 0.06);
  const double dy = rng.uniform(-0.03, 0.03);
  const double scale = rng.uniform(0.95, 1.05);
  const double phase0 = rng.uniform(0.0, 2.0 * M_PI);
  const double dropout = rng.uniform(0.02, 0.08);
  const double cx = 0.5, cy = 0.55;  // scale about the hip center

  Rng drop_rng = rng.split("dropout");
  std::vector<PoseVector> raw(raw_len);
  for (int t = 0; t < raw_len; ++t) {
    const JointFrame f = pose_at(id, p, phase0, t);
    for (int k = 0; k < kNumKeypoints; ++k) {
      if (drop_rng.bernoulli(dropout)) continue;  // keypoint missing this frame
      const double x = cx + scale * (f.x[k] - cx) + dx;
      const double y = cy + scale * (f.y[k] - cy) + dy;
      raw[t].values[2 * k] = std::clamp(x, 0.0, 1.0);
      raw[t].values[2 * k + 1] = std::clamp(y, 0.0, 1.0);
      raw[t].mask[2 * k] = true;
      raw[t].mask[2 * k + 1] = true;
    }
  }
  return pad_and_crop(raw, rng.split("crop").seed());
}

// --- prompts and tokenizer ---------------------------------------------------

namespace {

const std::vector<std::string>& subjects() {
  static const std::vector<std::string> v = {"woman", "man",     "person",
                                             "dancer", "athlete", "child"};
  return v;
}

const std::vector<std::string>& places() {
  static const std::vector<std::string> v = {
      "in a park",   "on a trail",  "in a gym",   "on a beach",
      "in a studio", "on a street", "in a field", "on a stage"};
  return v;
}

}  // namespace

std::string generate_prompt(MotionClassId id, std::uint64_t seed) {
  const auto& spec = motion_class_spec(id);
  Rng rng(seed);
  const auto& verb = spec.verbs[rng.uniform_int(0, static_cast<int>(spec.verbs.size()) - 1)];
  const auto& subject = subjects()[rng.uniform_int(0, static_cast<int>(subjects().size()) - 1)];
  const auto& place = places()[rng.uniform_int(0, static_cast<int>(places().size()) - 1)];
  switch (rng.uniform_int(0, 2)) {
    case 0: return "a " + subject + " is " + verb + " " + place;
    case 1: return "the video shows a " + subject + " " + verb + " " + place;
    default: return "a " + subject + " " + verb + " " + place;
  }
}

const std::vector<std::string>& text_vocab() {
  static const std::vector<std::string> vocab = [] {
    std::vector<std::string> v = {"<unk>"};
    std::vector<std::string> words = {"a",   "the", "video", "shows", "is",
                                      "in",  "on"};
    for (const auto& s : subjects()) words.push_back(s);
    for (const auto& spec : motion_class_specs())
      for (const auto& verb : spec.verbs) words.push_back(verb);
    for (const auto& place : places()) {
      std::string w;
      for (char c : place + " ") {
        if (c == ' ') {
          if (!w.empty()) words.push_back(w);
          w.clear();
        } else {
          w += c;
        }
      }
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    v.insert(v.end(), words.begin(), words.end());
    return v;
  }();
  return vocab;
}

int text_vocab_size() { return static_cast<int>(text_vocab().size()); }

std::string normalize_text(const std::string& s) {
  std::string out;
  bool space = true;
  for (char c : s) {
    const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (std::isalnum(static_cast<unsigned char>(lc))) {
      out += lc;
      space = false;
    } else if (!space) {
      out += ' ';
      space = true;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::vector<int> tokenize_prompt(const std::string& s) {
  static const std::map<std::string, int> index = [] {
    std::map<std::string, int> m;
    const auto& v = text_vocab();
    for (int i = 0; i < static_cast<int>(v.size()); ++i) m[v[i]] = i;
    return m;
  }();
  std::vector<int> ids;
  std::string word;
  const std::string norm = normalize_text(s) + " ";
  for (char c : norm) {
    if (c == ' ') {
      if (!word.empty()) {
        auto it = index.find(word);
        ids.push_back(it == index.end() ? kUnkTokenId : it->second);
        word.clear();
      }
    } else {
      word += c;
    }
  }
  return ids;
}

std::string detokenize(const std::vector<int>& ids) {
  std::string out;
  const auto& v = text_vocab();
  for (int id : ids) {
    if (!out.empty()) out += ' ';
    out += (id >= 0 && id < static_cast<int>(v.size())) ? v[id] : v[kUnkTokenId];
  }
  return out;
}

// --- oracle classifier -------------------------------------------------------

namespace {

// Per-frame scalar signal with holes forward/back-filled; empty if never seen.
std::vector<double> filled_signal(const PoseSequence& seq,
                                  const std::function<bool(const PoseVector&, double*)>& probe) {
  std::vector<double> s;
  s.reserve(seq.valid_len);
  double last = std::nan("");
  for (int t = 0; t < seq.valid_len; ++t) {
    double v;
    if (probe(seq.frames[t], &v)) last = v;
    s.push_back(last);
  }
  // back-fill the leading gap
  double first = std::nan("");
  for (double v : s)
    if (!std::isnan(v)) {
      first = v;
      break;
    }
  if (std::isnan(first)) return {};
  for (double& v : s)
    if (std::isnan(v)) v = first;
  return s;
}

double signal_std(const std::vector<double>& s) {
  if (s.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  double var = 0.0;
  for (double v : s) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(s.size()));
}

double signal_skew(const std::vector<double>& s) {
  if (s.size() < 3) return 0.0;
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  double m2 = 0.0, m3 = 0.0;
  for (double v : s) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= static_cast<double>(s.size());
  m3 /= static_cast<double>(s.size());
  if (m2 < 1e-12) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

// Dominant frequency from the first strong local maximum of the
// autocorrelation; 0 when no reliable peak exists.
double signal_freq(const std::vector<double>& s) {
  const int n = static_cast<int>(s.size());
  if (n < 20) return 0.0;
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= n;
  std::vector<double> c(s.size());
  for (int i = 0; i < n; ++i) c[i] = s[i] - mean;
  const int kmax = std::min(150, n - 10);
  std::vector<double> r(kmax + 1, 0.0);
  for (int k = 0; k <= kmax; ++k)
    for (int t = 0; t + k < n; ++t) r[k] += c[t] * c[t + k] / static_cast<double>(n - k);
  if (r[0] < 1e-12) return 0.0;
  for (int k = 4; k < kmax; ++k) {
    if (r[k] >= r[k - 1] && r[k] >= r[k + 1] && r[k] / r[0] > 0.2) {
      // parabolic refinement around the peak
      const double denom = r[k - 1] - 2.0 * r[k] + r[k + 1];
      double kk = k;
      if (std::abs(denom) > 1e-15) kk += 0.5 * (r[k - 1] - r[k + 1]) / denom;
      return kFps / kk;
    }
  }
  return 0.0;
}

bool both_visible(const PoseVector& f, int a, int b) {
  return f.mask[2 * a] && f.mask[2 * b];
}

}  // namespace

OracleFeatures oracle_features(const PoseSequence& seq) {
  OracleFeatures out;
  auto ankle_sep = filled_signal(seq, [](const PoseVector& f, double* v) {
    if (!both_visible(f, kAnkleL, kAnkleR)) return false;
    *v = f.values[2 * kAnkleL] - f.values[2 * kAnkleR];
    return true;
  });
  out.ankle_sep_std = signal_std(ankle_sep);
  out.ankle_sep_freq = signal_freq(ankle_sep);

  auto hip_y = filled_signal(seq, [](const PoseVector& f, double* v) {
    double sum = 0.0;
    int n = 0;
    if (f.mask[2 * kHipR]) {
      sum += f.values[2 * kHipR + 1];
      ++n;
    }
    if (f.mask[2 * kHipL]) {
      sum += f.values[2 * kHipL + 1];
      ++n;
    }
    if (n == 0) return false;
    *v = sum / n;
    return true;
  });
  out.hip_y_std = signal_std(hip_y);
  out.hip_y_skew = signal_skew(hip_y);
  out.hip_y_freq = signal_freq(hip_y);

  auto wrist_r = filled_signal(seq, [](const PoseVector& f, double* v) {
    if (!both_visible(f, kWristR, kShoulderR)) return false;
    *v = f.values[2 * kWristR] - f.values[2 * kShoulderR];
    return true;
  });
  auto wrist_l = filled_signal(seq, [](const PoseVector& f, double* v) {
    if (!both_visible(f, kWristL, kShoulderL)) return false;
    *v = f.values[2 * kWristL] - f.values[2 * kShoulderL];
    return true;
  });
  const double sr = signal_std(wrist_r), sl = signal_std(wrist_l);
  if (sr >= sl) {
    out.wrist_std = sr;
    out.wrist_freq = signal_freq(wrist_r);
  } else {
    out.wrist_std = sl;
    out.wrist_freq = signal_freq(wrist_l);
  }
  return out;
}

MotionClassId oracle_classify(const PoseSequence& seq) {
  require(seq.valid_len >= 30, "oracle needs at least 30 valid frames");
  const OracleFeatures f = oracle_features(seq);
  if (f.ankle_sep_std > 0.025) {
    if (f.ankle_sep_freq > 0.0)
      return f.ankle_sep_freq >= 0.92 ? MotionClassId::kRunning
                                      : MotionClassId::kWalking;
    return f.ankle_sep_std >= 0.141 ? MotionClassId::kRunning
                                    : MotionClassId::kWalking;
  }
  if (f.hip_y_std > 0.022) {
    if (f.hip_y_skew < -0.15) return MotionClassId::kJumping;
    if (f.hip_y_skew > 0.15) return MotionClassId::kSquatting;
    return f.hip_y_freq >= 0.47 ? MotionClassId::kJumping
                                : MotionClassId::kSquatting;
  }
  if (f.wrist_std > 0.035 && f.wrist_freq >= 1.5) return MotionClassId::kWaving;
  return MotionClassId::kUnknown;
}

// --- dataset -----------------------------------------------------------------

namespace {

std::uint64_t example_uid(std::uint64_t corpus_seed, MotionClassId id, int index) {
  return mix_seed(mix_seed(corpus_seed, "example"),
                  (static_cast<std::uint64_t>(static_cast<int>(id)) << 32) |
                      static_cast<std::uint32_t>(index));
}

}  // namespace

CorpusExample make_example(MotionClassId id, std::uint64_t corpus_seed, int index) {
  const std::uint64_t uid = example_uid(corpus_seed, id, index);
  for (std::uint64_t attempt = 0;; ++attempt) {
    require(attempt < 16, "could not generate an oracle-consistent example");
    Rng rng(mix_seed(uid, attempt));
    Rng prng = rng.split("params");
    const GaitParams params = draw_gait_params(id, prng);
    CorpusExample ex;
    ex.class_id = id;
    ex.sequence = generate_motion(id, params, rng.split("motion").seed());
    if (oracle_classify(ex.sequence) != id) continue;  // reroll, deterministic
    ex.prompt = generate_prompt(id, rng.split("prompt").seed());
    ex.keyframes = sample_keyframes(ex.sequence);
    return ex;
  }
}

const char* split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    default: return "test";
  }
}

Split split_of(std::uint64_t corpus_seed, MotionClassId id, int index) {
  const std::uint64_t h =
      splitmix64(mix_seed(mix_seed(corpus_seed, "split"),
                          (static_cast<std::uint64_t>(static_cast<int>(id)) << 32) |
                              static_cast<std::uint32_t>(index)));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  if (u < 0.8) return Split::kTrain;
  if (u < 0.9) return Split::kVal;
  return Split::kTest;
}

CorpusPaths corpus_paths(const std::string& dir) {
  return {dir + "/train.jsonl", dir + "/val.jsonl", dir + "/test.jsonl",
          dir + "/manifest.json"};
}

void build_dataset(int n_per_class, std::uint64_t seed, const std::string& out_dir) {
  require(n_per_class >= 1, "n_per_class must be >= 1");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);

  std::array<std::vector<SequenceRecord>, 3> buckets;
  for (const auto& spec : motion_class_specs()) {
    for (int i = 0; i < n_per_class; ++i) {
      CorpusExample ex = make_example(spec.id, seed, i);
      ex.sequence.validate();
      // cross-field invariants
      const KeyframeSet kf = sample_keyframes(ex.sequence);
      for (int k = 0; k < kNumKeyframes; ++k)
        require(kf.poses[k].values == ex.keyframes.poses[k].values,
                "keyframes out of sync with sequence");
      require(oracle_classify(ex.sequence) == ex.class_id,
              "oracle label does not match class");
      SequenceRecord rec;
      rec.prompt = ex.prompt;
      rec.class_id = static_cast<int>(ex.class_id);
      rec.sequence = ex.sequence;
      buckets[static_cast<int>(split_of(seed, spec.id, i))].push_back(std::move(rec));
    }
  }

  const CorpusPaths paths = corpus_paths(out_dir);
  write_jsonl(paths.train, buckets[0]);
  write_jsonl(paths.val, buckets[1]);
  write_jsonl(paths.test, buckets[2]);

  json manifest;
  manifest["format_version"] = 1;
  manifest["seed"] = seed;
  manifest["n_per_class"] = n_per_class;
  manifest["counts"] = {{"train", buckets[0].size()},
                        {"val", buckets[1].size()},
                        {"test", buckets[2].size()}};
  json classes = json::array();
  for (const auto& spec : motion_class_specs()) {
    classes.push_back({{"id", static_cast<int>(spec.id)},
                       {"name", spec.name},
                       {"freq_hz", {spec.freq_hz.lo, spec.freq_hz.hi}},
                       {"limb_amp", {spec.limb_amp.lo, spec.limb_amp.hi}},
                       {"bounce_amp", {spec.bounce_amp.lo, spec.bounce_amp.hi}}});
  }
  manifest["classes"] = std::move(classes);
  manifest["digests"] = {{"train", Sha256::of_file(paths.train)},
                         {"val", Sha256::of_file(paths.val)},
                         {"test", Sha256::of_file(paths.test)}};
  write_text_file(paths.manifest, manifest.dump(2) + "\n");
}

}  // namespace posedir
