#pragma once

#include <span>

#include "unselfie/diffusion.hpp"
#include "unselfie/iuv.hpp"
#include "unselfie/raster.hpp"
#include "unselfie/uv_inpaint.hpp"

namespace unselfie {

/// Body regions of the selfie and the neutral portrait and their union H.
struct HoleSpec {
    BitMask selfie;
    BitMask neutral;
    BitMask combined;
    double threshold = 0.1;

    static HoleSpec make(BitMask selfie, BitMask neutral, double threshold = 0.1);
};

/// Exactly one of `pose` or `matte` must be set.
struct BodyMaskSource {
    const IuvMap* pose = nullptr;
    const GrayImage* matte = nullptr;
};

/// Matte: value > threshold. Pose fallback: foreground dilated by a disk of
/// `dilation` pixels.
BitMask body_mask(const BodyMaskSource& source, double threshold = 0.1, int dilation = 3);

/// Head parts dilated by a disk of `radius`, extended straight down by
/// 2 * radius to cover the neck, which has no part label of its own.
BitMask head_neck_mask(const IuvMap& pose, std::span<const int> head_parts, int radius = 5);

struct BackgroundPlate {
    RgbImage image;
    BitMask holes;
};

/// Zeroes H_selfie minus the head region and flags it as holes.
BackgroundPlate make_background(const RgbImage& input, const BitMask& selfie_body,
                                const BitMask& head);

/// Diffuses colour into the holes. A zero `max_iterations` selects 4 * max(W, H).
RgbImage fill_background(const BackgroundPlate& plate, double tolerance = 1e-4,
                         int max_iterations = 0);

/// Foreground mask with an inward linear ramp of `feather` pixels, zero on `head`.
GrayImage baseline_alpha(const BitMask& fg_mask, const BitMask& head, int feather = 2);

struct BlendResult {
    RgbImage image;
    bool alpha_clamped = false;
};

/// (fg * A + bg * (1 - A)) * (1 - M), per pixel. Alpha outside [0, 1] is
/// clamped and reported.
BlendResult blend(const RgbImage& fg, const GrayImage& alpha, const RgbImage& bg,
                  const BitMask& invalid);

struct G2Losses {
    double reconstruction = 0.0;  // mean RGB L1 error weighted by (1 + H)
    double alpha = 0.0;           // mean |A - H|
    double combined = 0.0;        // lambda3 * reconstruction + alpha
    bool perceptual_included = false;
    bool adversarial_included = false;
};

G2Losses g2_losses(const RgbImage& output, const RgbImage& target, const GrayImage& alpha,
                   const BitMask& holes, const LossConfig& cfg = {});

}  // namespace unselfie
