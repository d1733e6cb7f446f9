#include "posedir/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace posedir {

namespace {

struct Rgb {
  std::uint8_t r, g, b;
};

// One color per bone, loosely following the OpenPose limb palette.
const std::array<Rgb, 17>& bone_palette() {
  static const std::array<Rgb, 17> colors = {{
      {255, 0, 0},   {255, 85, 0},  {255, 170, 0}, {255, 255, 0},
      {170, 255, 0}, {85, 255, 0},  {0, 255, 0},   {0, 255, 85},
      {0, 255, 170}, {0, 255, 255}, {0, 170, 255}, {0, 85, 255},
      {0, 0, 255},   {85, 0, 255},  {170, 0, 255}, {255, 0, 255},
      {255, 0, 170},
  }};
  return colors;
}

void fill_disc(Image& img, double cx, double cy, double radius, Rgb c) {
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - radius)));
  const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(cx + radius)));
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - radius)));
  const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(cy + radius)));
  const double r2 = radius * radius;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= r2) {
        auto* p = img.at(x, y);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
      }
    }
}

void draw_segment(Image& img, double ax, double ay, double bx, double by,
                  double half_width, Rgb c) {
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(ax, bx) - half_width)));
  const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(std::max(ax, bx) + half_width)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(ay, by) - half_width)));
  const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(std::max(ay, by) + half_width)));
  const double vx = bx - ax, vy = by - ay;
  const double len2 = vx * vx + vy * vy;
  const double w2 = half_width * half_width;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      const double px = x + 0.5 - ax, py = y + 0.5 - ay;
      double t = len2 > 0.0 ? std::clamp((px * vx + py * vy) / len2, 0.0, 1.0) : 0.0;
      const double dx = px - t * vx, dy = py - t * vy;
      if (dx * dx + dy * dy <= w2) {
        auto* p = img.at(x, y);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
      }
    }
}

std::string color_hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

}  // namespace

Image rasterize(const Pose& pose, int canvas_px, const RenderStyle& style) {
  require(canvas_px > 0, "canvas_px must be positive");
  pose.validate();
  Image img;
  img.width = canvas_px;
  img.height = canvas_px;
  img.rgb.assign(static_cast<std::size_t>(canvas_px) * canvas_px * 3, 255);
  const auto& bones = skeleton_bones();
  for (std::size_t b = 0; b < bones.size(); ++b) {
    const auto [i, j] = bones[b];
    if (!pose.visibility[i] || !pose.visibility[j]) continue;
    const Rgb c = style.colored_bones ? bone_palette()[b] : Rgb{0, 0, 0};
    draw_segment(img, pose.keypoints(i, 0) * canvas_px, pose.keypoints(i, 1) * canvas_px,
                 pose.keypoints(j, 0) * canvas_px, pose.keypoints(j, 1) * canvas_px,
                 style.bone_width_px / 2.0, c);
  }
  for (int i = 0; i < kNumKeypoints; ++i) {
    if (!pose.visibility[i]) continue;
    fill_disc(img, pose.keypoints(i, 0) * canvas_px, pose.keypoints(i, 1) * canvas_px,
              style.joint_radius_px / 2.0, Rgb{40, 40, 40});
  }
  return img;
}

void write_ppm(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.rgb.data()),
            static_cast<std::streamsize>(img.rgb.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::string sequence_to_svg(const PoseSequence& seq, int canvas_px,
                            const RenderStyle& style) {
  require(canvas_px > 0, "canvas_px must be positive");
  std::ostringstream svg;
  const double frame_s = 1.0 / kFps;
  const double total_s = seq.valid_len * frame_s;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas_px
      << "\" height=\"" << canvas_px << "\" viewBox=\"0 0 " << canvas_px << " "
      << canvas_px << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[64];
  for (int t = 0; t < seq.valid_len; ++t) {
    const Pose pose = unflatten(seq.frames[t]);
    std::snprintf(buf, sizeof(buf), "%.6f", t * frame_s);
    svg << "<g display=\"none\"><set attributeName=\"display\" to=\"inline\" begin=\""
        << buf << "s;loop.begin+" << buf << "s\" dur=\"";
    std::snprintf(buf, sizeof(buf), "%.6f", frame_s);
    svg << buf << "s\"/>\n";
    const auto& bones = skeleton_bones();
    for (std::size_t b = 0; b < bones.size(); ++b) {
      const auto [i, j] = bones[b];
      if (!pose.visibility[i] || !pose.visibility[j]) continue;
      const Rgb c = style.colored_bones ? bone_palette()[b] : Rgb{0, 0, 0};
      svg << "<line x1=\"" << pose.keypoints(i, 0) * canvas_px << "\" y1=\""
          << pose.keypoints(i, 1) * canvas_px << "\" x2=\""
          << pose.keypoints(j, 0) * canvas_px << "\" y2=\""
          << pose.keypoints(j, 1) * canvas_px << "\" stroke=\"" << color_hex(c)
          << "\" stroke-width=\"" << style.bone_width_px << "\"/>\n";
    }
    for (int i = 0; i < kNumKeypoints; ++i) {
      if (!pose.visibility[i]) continue;
      svg << "<circle cx=\"" << pose.keypoints(i, 0) * canvas_px << "\" cy=\""
          << pose.keypoints(i, 1) * canvas_px << "\" r=\""
          << style.joint_radius_px / 2.0 << "\" fill=\"#282828\"/>\n";
    }
    svg << "</g>\n";
  }
  // invisible animation driver that restarts the frame cycle
  std::snprintf(buf, sizeof(buf), "%.6f", total_s);
  svg << "<rect id=\"loop\" width=\"0\" height=\"0\"><animate attributeName=\"width\" "
         "from=\"0\" to=\"0\" begin=\"0s;loop.end\" dur=\""
      << buf << "s\"/></rect>\n";
  svg << "</svg>\n";
  return svg.str();
}

void rasterize_sequence(const PoseSequence& seq, int canvas_px,
                        const RenderStyle& style, const std::string& out_dir,
                        const std::string& stem) {
  require(canvas_px > 0, "canvas_px must be positive");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  char name[64];
  for (int t = 0; t < seq.valid_len; ++t) {
    std::snprintf(name, sizeof(name), "%s_%04d.ppm", stem.c_str(), t);
    write_ppm(out_dir + "/" + name, rasterize(unflatten(seq.frames[t]), canvas_px, style));
  }
  std::ofstream svg(out_dir + "/" + stem + "_anim.svg", std::ios::binary);
  if (!svg) throw IoError("cannot write animation svg in " + out_dir);
  svg << sequence_to_svg(seq, canvas_px, style);
}

}  // namespace posedir
