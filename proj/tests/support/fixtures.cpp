#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace unselfie::testing {

IuvMap random_iuv(int width, int height, Rng& rng, double torso_prob, double other_prob) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<float> unit(0.0f, 1.0f);
    std::uniform_int_distribution<int> other(1, kMaxPart);
    IuvMap pose(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double r = coin(rng);
            if (r < torso_prob) {
                pose.set(x, y, 2, unit(rng), unit(rng));
            } else if (r < torso_prob + other_prob) {
                int p = other(rng);
                if (p == 2) p = 1;
                pose.set(x, y, p, unit(rng), unit(rng));
            }
        }
    }
    return pose;
}

IuvMap injective_pose(int width, int height, const AtlasLayout& layout, Rng& rng, double fill) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> part(1, kMaxPart);
    std::uniform_int_distribution<int> local(0, layout.tile_size() - 1);
    IuvMap pose(width, height);
    BitMask used(layout.atlas_size(), layout.atlas_size());
    const float span = static_cast<float>(layout.tile_size() - 1);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (coin(rng) >= fill) continue;
            for (int attempt = 0; attempt < 8; ++attempt) {
                const int p = part(rng);
                const int lx = local(rng);
                const int ly = local(rng);
                const AtlasCell c = layout.cell(p, lx / span, ly / span);
                if (used(c.x, c.y)) continue;
                used(c.x, c.y) = 1;
                pose.set(x, y, p, lx / span, ly / span);
                break;
            }
        }
    }
    return pose;
}

RgbImage random_image(int width, int height, Rng& rng) {
    std::uniform_real_distribution<float> unit(0.0f, 1.0f);
    RgbImage img(width, height);
    for (auto& px : img.pixels()) px = {unit(rng), unit(rng), unit(rng)};
    return img;
}

SurfacePoint surface_point_for(const AtlasLayout& layout, AtlasCell c) {
    const int part = layout.part_at(c.x, c.y);
    const AtlasCell o = layout.tile_origin(part);
    const float span = static_cast<float>(layout.tile_size() - 1);
    return {part, (c.x - o.x) / span, (c.y - o.y) / span};
}

namespace {

void paint_segment(IuvMap& pose, double x0, double y0, double angle, int length, int thickness,
                   int part) {
    const double dx = std::cos(angle);
    const double dy = std::sin(angle);
    const double half = thickness / 2.0;
    const int pad = length + thickness;
    for (int y = static_cast<int>(y0) - pad; y <= static_cast<int>(y0) + pad; ++y) {
        for (int x = static_cast<int>(x0) - pad; x <= static_cast<int>(x0) + pad; ++x) {
            if (!pose.contains(x, y)) continue;
            const double rx = x - x0;
            const double ry = y - y0;
            const double along = rx * dx + ry * dy;
            const double across = -rx * dy + ry * dx;
            if (along < 0 || along > length || std::abs(across) > half) continue;
            const float u = static_cast<float>(std::clamp((across + half) / (2 * half), 0.0, 1.0));
            const float v = static_cast<float>(std::clamp(along / length, 0.0, 1.0));
            pose.set(x, y, part, u, v);
        }
    }
}

}  // namespace

IuvMap synthetic_body(const BodySpec& s, const AtlasLayout& layout, AtlasCell left_anchor,
                      AtlasCell right_anchor) {
    IuvMap pose(s.width, s.height);
    const int x_left = s.center_x - s.half_width;
    const int x_right = s.center_x + s.half_width;

    // Arms first so the torso overdraws the joint.
    const int forearm = s.arm_length * 4 / 5;
    const int hand = std::max(3, s.arm_thickness);
    auto arm = [&](int sx, double angle, int upper, int lower, int palm) {
        paint_segment(pose, sx, s.shoulder_y, angle, s.arm_length, s.arm_thickness, upper);
        const double ex = sx + std::cos(angle) * s.arm_length;
        const double ey = s.shoulder_y + std::sin(angle) * s.arm_length;
        const double bend = angle + s.elbow_bend;
        paint_segment(pose, ex, ey, bend, forearm, s.arm_thickness, lower);
        paint_segment(pose, ex + std::cos(bend) * forearm, ey + std::sin(bend) * forearm, bend,
                      hand, s.arm_thickness + 2, palm);
    };
    arm(x_left, s.left_arm_angle, 15, 19, 3);
    arm(x_right, s.right_arm_angle, 16, 20, 4);

    for (int y = s.shoulder_y; y <= s.shoulder_y + s.torso_height; ++y) {
        for (int x = x_left; x <= x_right; ++x) {
            if (!pose.contains(x, y)) continue;
            const double tu = static_cast<double>(x - x_left) / (x_right - x_left);
            const double tv = static_cast<double>(y - s.shoulder_y) / s.torso_height;
            pose.set(x, y, 2, static_cast<float>(std::pow(tu, s.u_gamma)),
                     static_cast<float>(std::pow(tv, s.v_gamma)));
        }
    }

    const int hy = s.shoulder_y - s.head_radius - 4;
    for (int y = hy - s.head_radius; y <= hy + s.head_radius; ++y) {
        for (int x = s.center_x - s.head_radius; x <= s.center_x + s.head_radius; ++x) {
            const int dx = x - s.center_x;
            const int dy = y - hy;
            if (!pose.contains(x, y) || dx * dx + dy * dy > s.head_radius * s.head_radius) continue;
            const float u = static_cast<float>(dx + s.head_radius) / (2 * s.head_radius);
            const float v = static_cast<float>(dy + s.head_radius) / (2 * s.head_radius);
            pose.set(x, y, dx < 0 ? 23 : 24, u, v);
        }
    }

    const SurfacePoint l = surface_point_for(layout, left_anchor);
    const SurfacePoint r = surface_point_for(layout, right_anchor);
    if (pose.contains(x_left, s.shoulder_y)) pose.set(x_left, s.shoulder_y, l.part, l.u, l.v);
    if (pose.contains(x_right, s.shoulder_y)) pose.set(x_right, s.shoulder_y, r.part, r.u, r.v);
    return pose;
}

RgbImage synthetic_photo(int width, int height, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 6.28);
    const double a = phase(rng), b = phase(rng), c = phase(rng);
    RgbImage img(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            img(x, y) = {static_cast<float>(0.5 + 0.45 * std::sin(0.05 * x + a)),
                         static_cast<float>(0.5 + 0.45 * std::sin(0.07 * y + b)),
                         static_cast<float>(0.5 + 0.45 * std::sin(0.03 * (x + y) + c))};
        }
    }
    return img;
}

BodySpec random_body(Rng& rng, int width, int height, bool selfie) {
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto real = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    BodySpec s;
    s.width = width;
    s.height = height;
    s.half_width = uniform(std::max(8, width / 16), std::max(9, width / 6));
    s.center_x = uniform(s.half_width + 4, width - s.half_width - 5);
    s.shoulder_y = uniform(height / 3, height / 2);
    s.torso_height = uniform(height / 5, height / 3);
    s.head_radius = std::max(4, s.half_width * 2 / 3);
    s.arm_length = uniform(height / 8, height / 5);
    s.arm_thickness = std::max(3, s.half_width / 3);
    s.u_gamma = real(0.7, 1.4);
    s.v_gamma = real(0.7, 1.4);
    const double down = std::numbers::pi / 2;
    s.right_arm_angle = real(down - 0.4, down - 0.1);
    if (selfie) {
        s.left_arm_angle = real(std::numbers::pi + 0.3, std::numbers::pi + 1.1);  // raised
        s.elbow_bend = real(0.5, 1.0);
    } else {
        s.left_arm_angle = real(down + 0.1, down + 0.4);
        s.elbow_bend = real(-0.2, 0.2);
    }
    return s;
}

std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("unselfie_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace unselfie::testing
