#include "unselfie/compose.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "unselfie/simd/kernels.hpp"

namespace unselfie {

HoleSpec HoleSpec::make(BitMask selfie, BitMask neutral, double threshold) {
    BitMask combined = mask_union(selfie, neutral);
    return {std::move(selfie), std::move(neutral), std::move(combined), threshold};
}

BitMask body_mask(const BodyMaskSource& source, double threshold, int dilation) {
    if ((source.pose == nullptr) == (source.matte == nullptr)) {
        throw InvalidArgument("body_mask: supply exactly one of pose or matte");
    }
    if (source.matte) {
        const GrayImage& m = *source.matte;
        BitMask out(m.width(), m.height());
        const float t = static_cast<float>(threshold);
        for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i] > t ? 1 : 0;
        return out;
    }
    return dilate_disk(source.pose->foreground(), dilation);
}

BitMask head_neck_mask(const IuvMap& pose, std::span<const int> head_parts, int radius) {
    const BitMask head = pose.part_mask(head_parts);
    BitMask out = dilate_disk(head, radius);
    for (int y = 0; y < head.height(); ++y) {
        for (int x = 0; x < head.width(); ++x) {
            if (!head(x, y)) continue;
            for (int dy = 0; dy <= 2 * radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    if (out.contains(x + dx, y + dy)) out(x + dx, y + dy) = 1;
                }
            }
        }
    }
    return out;
}

BackgroundPlate make_background(const RgbImage& input, const BitMask& selfie_body,
                                const BitMask& head) {
    require_same_shape(input, selfie_body, "make_background");
    require_same_shape(input, head, "make_background");
    BackgroundPlate plate{input, mask_difference(selfie_body, head)};
    for (std::size_t i = 0; i < plate.image.size(); ++i) {
        if (plate.holes[i]) plate.image[i] = Rgb{};
    }
    return plate;
}

RgbImage fill_background(const BackgroundPlate& plate, double tolerance, int max_iterations) {
    require_same_shape(plate.image, plate.holes, "fill_background");
    const int w = plate.image.width();
    const int h = plate.image.height();
    if (count(plate.holes) == plate.holes.size()) {
        throw InvalidArgument("fill_background: every pixel is a hole");
    }
    std::vector<double> values(plate.image.size() * 3);
    for (std::size_t i = 0; i < plate.image.size(); ++i) {
        values[3 * i] = plate.image[i].r;
        values[3 * i + 1] = plate.image[i].g;
        values[3 * i + 2] = plate.image[i].b;
    }
    const DiffusionOptions options{tolerance,
                                   max_iterations > 0 ? max_iterations : 4 * std::max(w, h)};
    BitMask filled;
    diffuse_fill(values, 3, mask_complement(plate.holes), BitMask(w, h, 1), options, filled);
    RgbImage out = plate.image;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!filled[i]) continue;
        out[i] = {static_cast<float>(values[3 * i]), static_cast<float>(values[3 * i + 1]),
                  static_cast<float>(values[3 * i + 2])};
    }
    return out;
}

GrayImage baseline_alpha(const BitMask& fg_mask, const BitMask& head, int feather) {
    require_same_shape(fg_mask, head, "baseline_alpha");
    const int reach = feather + 1;
    GrayImage alpha(fg_mask.width(), fg_mask.height());
    for (int y = 0; y < fg_mask.height(); ++y) {
        for (int x = 0; x < fg_mask.width(); ++x) {
            if (!fg_mask(x, y) || head(x, y)) continue;
            double nearest = reach;
            for (int dy = -reach; dy <= reach; ++dy) {
                for (int dx = -reach; dx <= reach; ++dx) {
                    if (!fg_mask.contains(x + dx, y + dy) || fg_mask(x + dx, y + dy)) continue;
                    nearest = std::min(nearest, std::hypot(dx, dy));
                }
            }
            alpha(x, y) = static_cast<float>(nearest / reach);
        }
    }
    return alpha;
}

BlendResult blend(const RgbImage& fg, const GrayImage& alpha, const RgbImage& bg,
                  const BitMask& invalid) {
    require_same_shape(fg, alpha, "blend");
    require_same_shape(fg, bg, "blend");
    require_same_shape(fg, invalid, "blend");
    const std::size_t n = fg.size();

    BlendResult result{RgbImage(fg.width(), fg.height()), false};
    std::vector<float> a(3 * n);
    std::vector<std::uint8_t> keep(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        float v = alpha[i];
        if (!(v >= 0.0f && v <= 1.0f)) {
            v = std::isnan(v) ? 0.0f : std::clamp(v, 0.0f, 1.0f);
            result.alpha_clamped = true;
        }
        a[3 * i] = a[3 * i + 1] = a[3 * i + 2] = v;
        keep[3 * i] = keep[3 * i + 1] = keep[3 * i + 2] = invalid[i] ? 0 : 1;
    }
    static_assert(sizeof(Rgb) == 3 * sizeof(float));
    auto flat = [](const RgbImage& img) {
        return std::span<const float>(reinterpret_cast<const float*>(img.pixels().data()),
                                      3 * img.size());
    };
    std::span<float> out(reinterpret_cast<float*>(result.image.pixels().data()), 3 * n);
    simd::blend(flat(fg), flat(bg), a, keep, out);
    return result;
}

G2Losses g2_losses(const RgbImage& output, const RgbImage& target, const GrayImage& alpha,
                   const BitMask& holes, const LossConfig& cfg) {
    require_same_shape(output, target, "g2_losses");
    require_same_shape(output, alpha, "g2_losses");
    require_same_shape(output, holes, "g2_losses");
    G2Losses out;
    const std::size_t n = output.size();
    if (n == 0) return out;
    double rec = 0.0;
    double alp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Rgb a = output[i];
        const Rgb b = target[i];
        const double l1 = std::abs(static_cast<double>(a.r) - b.r) +
                          std::abs(static_cast<double>(a.g) - b.g) +
                          std::abs(static_cast<double>(a.b) - b.b);
        const double h = holes[i] ? 1.0 : 0.0;
        rec += l1 * (1.0 + h);
        alp += std::abs(static_cast<double>(alpha[i]) - h);
    }
    out.reconstruction = rec / static_cast<double>(n);
    out.alpha = alp / static_cast<double>(n);
    out.combined = cfg.lambda3 * out.reconstruction + out.alpha;
    return out;
}

}  // namespace unselfie
