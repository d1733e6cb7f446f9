#ifndef POSEDIR_POSE_HPP_
#define POSEDIR_POSE_HPP_

#include "posedir/common.hpp"

#include <array>
#include <optional>
#include <vector>

namespace posedir {

inline constexpr int kNumKeypoints = 18;
inline constexpr int kPoseDim = 36;  // 18 keypoints flattened (x, y)
inline constexpr int kSeqLen = 200;
inline constexpr int kMaxRawLen = 240;
inline constexpr int kNumKeyframes = 20;
inline constexpr int kKeyframeStride = 10;
inline constexpr double kFps = 30.0;

// COCO-OpenPose 18-point order.
enum Keypoint : int {
  kNose = 0, kNeck, kShoulderR, kElbowR, kWristR, kShoulderL, kElbowL,
  kWristL, kHipR, kKneeR, kAnkleR, kHipL, kKneeL, kAnkleL, kEyeR, kEyeL,
  kEarR, kEarL
};

const char* keypoint_name(int k);

// Bone list for the 18-point topology (17 edges).
const std::array<std::pair<int, int>, 17>& skeleton_bones();

// One human pose on the unit canvas. Invisible keypoints hold exactly (0,0).
struct Pose {
  Eigen::Matrix<double, Eigen::Dynamic, 2> keypoints;  // 18 x 2
  std::array<bool, kNumKeypoints> visibility{};

  Pose() : keypoints(Eigen::Matrix<double, Eigen::Dynamic, 2>::Zero(kNumKeypoints, 2)) {}
  void validate() const;
};

// Flattened pose: values[2i] = x_i, values[2i+1] = y_i.
// mask[2i] == mask[2i+1] == visibility of keypoint i.
struct PoseVector {
  VecX values;
  std::array<bool, kPoseDim> mask{};

  PoseVector() : values(VecX::Zero(kPoseDim)) {}
  void validate() const;
};

// Fixed-length 30 fps sequence; frames past valid_len are zero with all-false
// masks so they drop out of every masked loss.
struct PoseSequence {
  std::vector<PoseVector> frames;  // exactly kSeqLen
  int valid_len = 0;

  void validate() const;
};

struct KeyframeSet {
  std::array<PoseVector, kNumKeyframes> poses;
  std::array<int, kNumKeyframes> source_indices{};
};

using RawKeypoints = std::array<std::optional<Eigen::Vector2d>, kNumKeypoints>;

Pose normalize_pose(const RawKeypoints& raw, double canvas_w, double canvas_h);

PoseVector flatten(const Pose& pose);
// Clamps coordinates into [0,1] and zeroes invisible entries, so arbitrary
// model output flattens into a valid Pose. Exact inverse of flatten on valid
// poses.
Pose unflatten(const PoseVector& pv);

KeyframeSet sample_keyframes(const PoseSequence& seq);

PoseSequence pad_and_crop(const std::vector<PoseVector>& raw, std::uint64_t rng_seed);

// Mean squared difference over positions where the *target* mask is true.
double masked_mse(const std::vector<PoseVector>& pred,
                  const std::vector<PoseVector>& target);
double masked_mse(const MatX& pred, const MatX& target, const MatB& target_mask);

// Mean squared third-order finite difference over coordinates visible in all
// four frames of each difference window, within [start, start+len).
double jerk_energy(const PoseSequence& seq);
double jerk_energy_window(const PoseSequence& seq, int start, int len);

// 36 x 200 column-per-frame views.
MatX sequence_matrix(const PoseSequence& seq);
MatB sequence_mask(const PoseSequence& seq);
PoseSequence sequence_from_matrix(const MatX& m, int valid_len);

MatX keyframe_matrix(const KeyframeSet& kf);
MatB keyframe_mask(const KeyframeSet& kf);

}  // namespace posedir

#endif  // POSEDIR_POSE_HPP_
