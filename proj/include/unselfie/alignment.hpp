#pragma once

#include <utility>

#include "unselfie/atlas.hpp"
#include "unselfie/iuv.hpp"
#include "unselfie/raster.hpp"

namespace unselfie {

/// Uniform scale followed by translation: canvas = scale * source + (tx, ty).
struct SimilarityTransform {
    double scale = 1.0;
    double tx = 0.0;
    double ty = 0.0;

    Point2 apply(Point2 p) const { return {scale * p.x + tx, scale * p.y + ty}; }
    Point2 invert(Point2 q) const { return {(q.x - tx) / scale, (q.y - ty) / scale}; }
};

/// Where the shoulders are read from and where they are sent.
struct AlignmentSpec {
    /// Atlas cells holding the left and right shoulder points.
    AtlasCell left_anchor{63, 133};
    AtlasCell right_anchor{92, 133};
    /// Canvas positions the shoulders are moved to.
    Point2 left_target{112.0, 128.0};
    Point2 right_target{143.0, 128.0};
    int canvas_size = 256;
    /// Largest Euclidean atlas distance searched when an anchor cell is empty.
    double fallback_radius = 5.0;
};

struct ShoulderPoints {
    Point2 left;
    Point2 right;
};

/// Image-space shoulder positions read from the pose's coordinate map. An
/// empty anchor cell falls back to the nearest valid cell of the same tile
/// within `fallback_radius` (ties resolved in row-major order).
ShoulderPoints find_shoulders(const IuvMap& pose, const AtlasLayout& layout,
                              const AlignmentSpec& spec = {});

/// Scale maps the shoulder distance onto the target distance and the
/// translation puts the shoulder midpoint on the target midpoint. Rotation is
/// not estimated, so tilted shoulders only match the targets approximately.
SimilarityTransform shoulder_transform(const ShoulderPoints& shoulders,
                                       const AlignmentSpec& spec = {});

struct AlignedSample {
    RgbImage image;
    IuvMap pose;
    /// Canvas pixels with no source coverage (M).
    BitMask invalid;
    SimilarityTransform transform;
    ShoulderPoints shoulders;
};

/// Warps image (bilinear) and pose (nearest neighbour) onto the canvas.
AlignedSample warp_to_canvas(const RgbImage& img, const IuvMap& pose,
                             const SimilarityTransform& transform, int canvas_size);

AlignedSample align(const RgbImage& img, const IuvMap& pose, const AtlasLayout& layout,
                    const AlignmentSpec& spec = {});

}  // namespace unselfie
