#include "unselfie/raster.hpp"

#include <algorithm>
#include <cmath>

namespace unselfie {

namespace {

template <class Op>
BitMask combine(const BitMask& a, const BitMask& b, const char* what, Op op) {
    require_same_shape(a, b, what);
    BitMask out(a.width(), a.height());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = op(a[i] != 0, b[i] != 0) ? 1 : 0;
    }
    return out;
}

}  // namespace

BitMask mask_union(const BitMask& a, const BitMask& b) {
    return combine(a, b, "mask_union", [](bool x, bool y) { return x || y; });
}

BitMask mask_intersection(const BitMask& a, const BitMask& b) {
    return combine(a, b, "mask_intersection", [](bool x, bool y) { return x && y; });
}

BitMask mask_difference(const BitMask& a, const BitMask& b) {
    return combine(a, b, "mask_difference", [](bool x, bool y) { return x && !y; });
}

BitMask mask_complement(const BitMask& a) {
    BitMask out(a.width(), a.height());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ? 0 : 1;
    return out;
}

BitMask dilate_disk(const BitMask& mask, int radius) {
    if (radius <= 0) return mask;
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy <= radius * radius) offsets.emplace_back(dx, dy);
        }
    }
    BitMask out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask(x, y)) continue;
            for (auto [dx, dy] : offsets) {
                if (out.contains(x + dx, y + dy)) out(x + dx, y + dy) = 1;
            }
        }
    }
    return out;
}

BitMask resize_nearest(const BitMask& mask, int width, int height) {
    BitMask out(width, height);
    if (mask.empty()) return out;
    for (int y = 0; y < height; ++y) {
        const int sy = std::min(mask.height() - 1,
                                static_cast<int>(std::floor((y + 0.5) * mask.height() / height)));
        for (int x = 0; x < width; ++x) {
            const int sx = std::min(mask.width() - 1,
                                    static_cast<int>(std::floor((x + 0.5) * mask.width() / width)));
            out(x, y) = mask(sx, sy);
        }
    }
    return out;
}

RgbImage resize_bilinear(const RgbImage& img, int width, int height) {
    if (img.empty()) throw DimensionError("resize_bilinear: empty image");
    RgbImage out(width, height);
    const double sx = static_cast<double>(img.width()) / width;
    const double sy = static_cast<double>(img.height()) / height;
    for (int y = 0; y < height; ++y) {
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height() - 1.0);
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, img.height() - 1);
        const double wy = fy - y0;
        for (int x = 0; x < width; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width() - 1.0);
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, img.width() - 1);
            const double wx = fx - x0;
            auto lerp = [&](float Rgb::*c) {
                const double top = img(x0, y0).*c * (1 - wx) + img(x1, y0).*c * wx;
                const double bot = img(x0, y1).*c * (1 - wx) + img(x1, y1).*c * wx;
                return static_cast<float>(top * (1 - wy) + bot * wy);
            };
            out(x, y) = {lerp(&Rgb::r), lerp(&Rgb::g), lerp(&Rgb::b)};
        }
    }
    return out;
}

}  // namespace unselfie
