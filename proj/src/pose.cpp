#include "posedir/pose.hpp"

#include "posedir/rng.hpp"

#include <cmath>

namespace posedir {

const char* keypoint_name(int k) {
  static const char* names[kNumKeypoints] = {
      "nose", "neck", "shoulder_r", "elbow_r", "wrist_r", "shoulder_l",
      "elbow_l", "wrist_l", "hip_r", "knee_r", "ankle_r", "hip_l",
      "knee_l", "ankle_l", "eye_r", "eye_l", "ear_r", "ear_l"};
  return names[k];
}

const std::array<std::pair<int, int>, 17>& skeleton_bones() {
  static const std::array<std::pair<int, int>, 17> bones = {{
      {kNeck, kShoulderR}, {kNeck, kShoulderL}, {kShoulderR, kElbowR},
      {kElbowR, kWristR}, {kShoulderL, kElbowL}, {kElbowL, kWristL},
      {kNeck, kHipR}, {kHipR, kKneeR}, {kKneeR, kAnkleR}, {kNeck, kHipL},
      {kHipL, kKneeL}, {kKneeL, kAnkleL}, {kNeck, kNose}, {kNose, kEyeR},
      {kEyeR, kEarR}, {kNose, kEyeL}, {kEyeL, kEarL},
  }};
  return bones;
}

void Pose::validate() const {
  require_shape(keypoints.rows() == kNumKeypoints, "pose must have 18 keypoints");
  for (int i = 0; i < kNumKeypoints; ++i) {
    const double x = keypoints(i, 0), y = keypoints(i, 1);
    require(std::isfinite(x) && std::isfinite(y), "non-finite keypoint coordinate");
    if (visibility[i]) {
      require(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0,
              "visible keypoint outside unit canvas");
    } else {
      require(x == 0.0 && y == 0.0, "invisible keypoint must be exactly (0,0)");
    }
  }
}

void PoseVector::validate() const {
  require_shape(values.size() == kPoseDim, "pose vector must have 36 values");
  for (int i = 0; i < kNumKeypoints; ++i)
    require(mask[2 * i] == mask[2 * i + 1], "x/y of one keypoint must share visibility");
}

void PoseSequence::validate() const {
  require_shape(static_cast<int>(frames.size()) == kSeqLen,
                "sequence must have exactly 200 frames");
  require(valid_len >= 1 && valid_len <= kSeqLen, "valid_len out of range");
  for (int t = valid_len; t < kSeqLen; ++t) {
    const PoseVector& f = frames[t];
    for (int i = 0; i < kPoseDim; ++i)
      require(f.values[i] == 0.0 && !f.mask[i], "padded frame must be zero/all-false");
  }
}

Pose normalize_pose(const RawKeypoints& raw, double canvas_w, double canvas_h) {
  require(canvas_w > 0.0 && canvas_h > 0.0, "canvas dimensions must be positive");
  require_shape(raw.size() == kNumKeypoints, "exactly 18 raw keypoints required");
  Pose pose;
  for (int i = 0; i < kNumKeypoints; ++i) {
    if (!raw[i].has_value()) continue;
    const Eigen::Vector2d& p = *raw[i];
    require(std::isfinite(p.x()) && std::isfinite(p.y()), "non-finite raw keypoint");
    pose.keypoints(i, 0) = p.x() / canvas_w;
    pose.keypoints(i, 1) = p.y() / canvas_h;
    pose.visibility[i] = true;
  }
  return pose;
}

PoseVector flatten(const Pose& pose) {
  require_shape(pose.keypoints.rows() == kNumKeypoints, "pose must have 18 keypoints");
  PoseVector pv;
  for (int i = 0; i < kNumKeypoints; ++i) {
    pv.values[2 * i] = pose.keypoints(i, 0);
    pv.values[2 * i + 1] = pose.keypoints(i, 1);
    pv.mask[2 * i] = pose.visibility[i];
    pv.mask[2 * i + 1] = pose.visibility[i];
  }
  return pv;
}

Pose unflatten(const PoseVector& pv) {
  pv.validate();
  Pose pose;
  for (int i = 0; i < kNumKeypoints; ++i) {
    pose.visibility[i] = pv.mask[2 * i];
    if (!pose.visibility[i]) continue;
    pose.keypoints(i, 0) = std::clamp(pv.values[2 * i], 0.0, 1.0);
    pose.keypoints(i, 1) = std::clamp(pv.values[2 * i + 1], 0.0, 1.0);
  }
  return pose;
}

KeyframeSet sample_keyframes(const PoseSequence& seq) {
  require_shape(static_cast<int>(seq.frames.size()) == kSeqLen,
                "sequence must have exactly 200 frames");
  KeyframeSet kf;
  for (int i = 0; i < kNumKeyframes; ++i) {
    kf.source_indices[i] = i * kKeyframeStride;
    kf.poses[i] = seq.frames[kf.source_indices[i]];
  }
  return kf;
}

PoseSequence pad_and_crop(const std::vector<PoseVector>& raw, std::uint64_t rng_seed) {
  require(!raw.empty(), "empty frame list");
  require(static_cast<int>(raw.size()) <= kMaxRawLen,
          "raw sequence longer than 240 frames");
  PoseSequence seq;
  seq.frames.assign(kSeqLen, PoseVector{});
  const int n = static_cast<int>(raw.size());
  if (n >= kSeqLen) {
    Rng rng(rng_seed);
    const int start = static_cast<int>(rng.uniform_int(0, n - kSeqLen));
    for (int t = 0; t < kSeqLen; ++t) seq.frames[t] = raw[start + t];
    seq.valid_len = kSeqLen;
  } else {
    for (int t = 0; t < n; ++t) seq.frames[t] = raw[t];
    seq.valid_len = n;
  }
  return seq;
}

double masked_mse(const std::vector<PoseVector>& pred,
                  const std::vector<PoseVector>& target) {
  require_shape(pred.size() == target.size(), "pred/target length mismatch");
  double sum = 0.0;
  std::int64_t count = 0;
  for (std::size_t t = 0; t < target.size(); ++t) {
    require_shape(pred[t].values.size() == target[t].values.size(),
                  "pred/target shape mismatch");
    for (int i = 0; i < target[t].values.size(); ++i) {
      if (!target[t].mask[i]) continue;
      const double d = pred[t].values[i] - target[t].values[i];
      sum += d * d;
      ++count;
    }
  }
  require(count > 0, "masked_mse undefined: no visible positions");
  return sum / static_cast<double>(count);
}

double masked_mse(const MatX& pred, const MatX& target, const MatB& target_mask) {
  require_shape(pred.rows() == target.rows() && pred.cols() == target.cols() &&
                    target.rows() == target_mask.rows() &&
                    target.cols() == target_mask.cols(),
                "pred/target shape mismatch");
  double sum = 0.0;
  std::int64_t count = 0;
  for (Eigen::Index j = 0; j < target.cols(); ++j)
    for (Eigen::Index i = 0; i < target.rows(); ++i)
      if (target_mask(i, j)) {
        const double d = pred(i, j) - target(i, j);
        sum += d * d;
        ++count;
      }
  require(count > 0, "masked_mse undefined: no visible positions");
  return sum / static_cast<double>(count);
}

double jerk_energy_window(const PoseSequence& seq, int start, int len) {
  require(len >= 4, "jerk window needs at least 4 frames");
  require(start >= 0 && start + len <= static_cast<int>(seq.frames.size()),
          "jerk window out of range");
  double sum = 0.0;
  std::int64_t count = 0;
  for (int t = start; t + 3 < start + len; ++t) {
    for (int i = 0; i < kPoseDim; ++i) {
      if (!(seq.frames[t].mask[i] && seq.frames[t + 1].mask[i] &&
            seq.frames[t + 2].mask[i] && seq.frames[t + 3].mask[i]))
        continue;
      const double d = seq.frames[t + 3].values[i] - 3.0 * seq.frames[t + 2].values[i] +
                       3.0 * seq.frames[t + 1].values[i] - seq.frames[t].values[i];
      sum += d * d;
      ++count;
    }
  }
  if (count == 0) return 0.0;
  return sum / static_cast<double>(count);
}

double jerk_energy(const PoseSequence& seq) {
  require(seq.valid_len >= 4, "jerk_energy needs valid_len >= 4");
  return jerk_energy_window(seq, 0, seq.valid_len);
}

MatX sequence_matrix(const PoseSequence& seq) {
  MatX m(kPoseDim, kSeqLen);
  for (int t = 0; t < kSeqLen; ++t) m.col(t) = seq.frames[t].values;
  return m;
}

MatB sequence_mask(const PoseSequence& seq) {
  MatB m(kPoseDim, kSeqLen);
  for (int t = 0; t < kSeqLen; ++t)
    for (int i = 0; i < kPoseDim; ++i) m(i, t) = seq.frames[t].mask[i];
  return m;
}

PoseSequence sequence_from_matrix(const MatX& m, int valid_len) {
  require_shape(m.rows() == kPoseDim && m.cols() == kSeqLen, "expected 36x200 matrix");
  PoseSequence seq;
  seq.frames.assign(kSeqLen, PoseVector{});
  seq.valid_len = valid_len;
  for (int t = 0; t < valid_len; ++t) {
    seq.frames[t].values = m.col(t);
    seq.frames[t].mask.fill(true);
  }
  return seq;
}

MatX keyframe_matrix(const KeyframeSet& kf) {
  MatX m(kPoseDim, kNumKeyframes);
  for (int i = 0; i < kNumKeyframes; ++i) m.col(i) = kf.poses[i].values;
  return m;
}

MatB keyframe_mask(const KeyframeSet& kf) {
  MatB m(kPoseDim, kNumKeyframes);
  for (int i = 0; i < kNumKeyframes; ++i)
    for (int j = 0; j < kPoseDim; ++j) m(j, i) = kf.poses[i].mask[j];
  return m;
}

}  // namespace posedir
