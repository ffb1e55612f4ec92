#include "unselfie/alignment.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace unselfie {

namespace {

Point2 read_anchor(const CoordinateMap& coords, const AtlasLayout& layout, AtlasCell anchor,
                   double radius) {
    const int tile = layout.part_at(anchor.x, anchor.y);
    if (tile == 0) {
        throw ShoulderNotFoundError("shoulder anchor (" + std::to_string(anchor.x) + "," +
                                    std::to_string(anchor.y) + ") lies outside every atlas tile");
    }
    if (coords.valid(anchor.x, anchor.y)) {
        const Coord c = coords.values(anchor.x, anchor.y);
        return {c.x, c.y};
    }
    const int r = static_cast<int>(std::floor(radius));
    double best = std::numeric_limits<double>::infinity();
    std::optional<Coord> found;
    for (int y = anchor.y - r; y <= anchor.y + r; ++y) {
        for (int x = anchor.x - r; x <= anchor.x + r; ++x) {
            if (!coords.valid.contains(x, y) || layout.part_at(x, y) != tile) continue;
            if (!coords.valid(x, y)) continue;
            const double dx = x - anchor.x;
            const double dy = y - anchor.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 > radius * radius || d2 >= best) continue;
            best = d2;
            found = coords.values(x, y);
        }
    }
    if (!found) {
        throw ShoulderNotFoundError("no valid coordinate within " + std::to_string(radius) +
                                    " cells of shoulder anchor (" + std::to_string(anchor.x) +
                                    "," + std::to_string(anchor.y) + ")");
    }
    return {found->x, found->y};
}

}  // namespace

ShoulderPoints find_shoulders(const IuvMap& pose, const AtlasLayout& layout,
                              const AlignmentSpec& spec) {
    const CoordinateMap coords = pose_coordinates(pose, layout);
    return {read_anchor(coords, layout, spec.left_anchor, spec.fallback_radius),
            read_anchor(coords, layout, spec.right_anchor, spec.fallback_radius)};
}

SimilarityTransform shoulder_transform(const ShoulderPoints& s, const AlignmentSpec& spec) {
    const double separation = std::hypot(s.right.x - s.left.x, s.right.y - s.left.y);
    if (!(separation > 1.0)) {
        throw DegenerateTransformError("shoulder points " + std::to_string(separation) +
                                       " px apart; need more than 1 px");
    }
    const double target = std::hypot(spec.right_target.x - spec.left_target.x,
                                      spec.right_target.y - spec.left_target.y);
    const double scale = target / separation;
    const Point2 mid{(s.left.x + s.right.x) / 2.0, (s.left.y + s.right.y) / 2.0};
    const Point2 target_mid{(spec.left_target.x + spec.right_target.x) / 2.0,
                            (spec.left_target.y + spec.right_target.y) / 2.0};
    return {scale, target_mid.x - scale * mid.x, target_mid.y - scale * mid.y};
}

AlignedSample warp_to_canvas(const RgbImage& img, const IuvMap& pose,
                             const SimilarityTransform& transform, int canvas_size) {
    require_same_shape(img, pose.parts(), "align");
    if (img.empty()) throw DimensionError("align: zero-sized input");
    AlignedSample out;
    out.image = RgbImage(canvas_size, canvas_size);
    out.pose = IuvMap(canvas_size, canvas_size);
    out.invalid = BitMask(canvas_size, canvas_size, 1);
    out.transform = transform;
    const double max_x = img.width() - 1;
    const double max_y = img.height() - 1;
    for (int y = 0; y < canvas_size; ++y) {
        for (int x = 0; x < canvas_size; ++x) {
            const Point2 p = transform.invert({static_cast<double>(x), static_cast<double>(y)});
            if (!(p.x >= 0.0 && p.y >= 0.0 && p.x <= max_x && p.y <= max_y)) continue;
            out.invalid(x, y) = 0;
            out.image(x, y) = *bilinear_at(img, p.x, p.y);
            const int sx = static_cast<int>(std::round(p.x));
            const int sy = static_cast<int>(std::round(p.y));
            out.pose.set(x, y, pose.part(sx, sy), pose.u(sx, sy), pose.v(sx, sy));
        }
    }
    return out;
}

AlignedSample align(const RgbImage& img, const IuvMap& pose, const AtlasLayout& layout,
                    const AlignmentSpec& spec) {
    require_same_shape(img, pose.parts(), "align");
    const ShoulderPoints shoulders = find_shoulders(pose, layout, spec);
    AlignedSample out = warp_to_canvas(img, pose, shoulder_transform(shoulders, spec),
                                       spec.canvas_size);
    out.shoulders = shoulders;
    return out;
}

}  // namespace unselfie
