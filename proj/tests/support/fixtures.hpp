#pragma once

#include <cstdint>
#include <filesystem>
#include <random>

#include "unselfie/atlas.hpp"
#include "unselfie/iuv.hpp"
#include "unselfie/raster.hpp"

namespace unselfie::testing {

using Rng = std::mt19937_64;

/// Random map where each pixel is background, front torso (2), or another
/// part with the given probabilities; u, v uniform in [0, 1].
IuvMap random_iuv(int width, int height, Rng& rng, double torso_prob = 0.5,
                  double other_prob = 0.25);

/// Pose whose foreground pixels all map to distinct atlas cells.
IuvMap injective_pose(int width, int height, const AtlasLayout& layout, Rng& rng,
                      double fill = 0.3);

RgbImage random_image(int width, int height, Rng& rng);

/// Geometry of a synthetic upper body.
struct BodySpec {
    int width = 256;
    int height = 256;
    int center_x = 128;
    int shoulder_y = 128;
    int half_width = 16;  // shoulder markers sit at center_x -/+ half_width
    int torso_height = 60;
    int head_radius = 12;
    // Arm directions in radians, image axes (0 = +x, pi/2 = straight down).
    double left_arm_angle = 1.8;
    double right_arm_angle = 1.3;
    double elbow_bend = 0.3;
    int arm_length = 40;
    int arm_thickness = 6;
    // Torso surface parameterisation: u = t^u_gamma, v = t^v_gamma.
    double u_gamma = 1.0;
    double v_gamma = 1.0;
};

/// Upper-body pose: torso (2), head halves (23/24), upper arms (15/16),
/// lower arms (19/20), hands (3/4) and a single shoulder-marker pixel on
/// each side whose surface coordinate maps onto the given atlas anchor cell.
IuvMap synthetic_body(const BodySpec& spec, const AtlasLayout& layout,
                      AtlasCell left_anchor = {63, 133}, AtlasCell right_anchor = {92, 133});

/// Smooth, position-dependent colours so that distinct pixels differ.
RgbImage synthetic_photo(int width, int height, std::uint64_t seed);

/// Randomised body spec that fits inside the image.
BodySpec random_body(Rng& rng, int width, int height, bool selfie);

/// (part, u, v) that lands exactly on atlas cell `c`.
struct SurfacePoint {
    int part;
    float u;
    float v;
};
SurfacePoint surface_point_for(const AtlasLayout& layout, AtlasCell c);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

}  // namespace unselfie::testing
