#ifndef POSEDIR_RENDER_HPP_
#define POSEDIR_RENDER_HPP_

#include "posedir/pose.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace posedir {

struct RenderStyle {
  double bone_width_px = 3.0;
  double joint_radius_px = 4.0;
  bool colored_bones = true;  // OpenPose-style limb palette; else black
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  std::uint8_t* at(int x, int y) { return rgb.data() + 3 * (y * width + x); }
  const std::uint8_t* at(int x, int y) const { return rgb.data() + 3 * (y * width + x); }
};

// Deterministic skeleton drawing: visible joints as dots, bones between
// mutually visible joints. Invisible joints and their bones are omitted.
Image rasterize(const Pose& pose, int canvas_px, const RenderStyle& style = {});

void write_ppm(const std::string& path, const Image& img);

// frame_%04d.ppm per frame plus a single SMIL-animated SVG.
void rasterize_sequence(const PoseSequence& seq, int canvas_px,
                        const RenderStyle& style, const std::string& out_dir,
                        const std::string& stem = "frame");

std::string sequence_to_svg(const PoseSequence& seq, int canvas_px,
                            const RenderStyle& style);

}  // namespace posedir

#endif  // POSEDIR_RENDER_HPP_
