#include "unselfie/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace unselfie {

AtlasLayout::AtlasLayout(int atlas_size, int rows, int cols)
    : atlas_size_(atlas_size), rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0 || rows * cols < kMaxPart) {
        throw ConfigError("atlas grid " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " cannot hold " + std::to_string(kMaxPart) + " parts");
    }
    tile_size_ = atlas_size / std::max(rows, cols);
    if (tile_size_ < 2) {
        throw ConfigError("atlas size " + std::to_string(atlas_size) + " gives tiles under 2 px");
    }
}

AtlasCell AtlasLayout::tile_origin(int part) const {
    if (part < 1 || part > kMaxPart) {
        throw InvalidArgument("no atlas tile for part " + std::to_string(part));
    }
    const int idx = part - 1;
    return {(idx % cols_) * tile_size_, (idx / cols_) * tile_size_};
}

AtlasCell AtlasLayout::cell(int part, float u, float v) const {
    const AtlasCell o = tile_origin(part);
    const double span = tile_size_ - 1;
    return {o.x + static_cast<int>(std::round(static_cast<double>(u) * span)),
            o.y + static_cast<int>(std::round(static_cast<double>(v) * span))};
}

int AtlasLayout::part_at(int x, int y) const noexcept {
    if (x < 0 || y < 0) return 0;
    const int col = x / tile_size_;
    const int row = y / tile_size_;
    if (col >= cols_ || row >= rows_) return 0;
    const int part = row * cols_ + col + 1;
    return part <= kMaxPart ? part : 0;
}

AtlasCell AtlasLayout::mirror_cell(AtlasCell c, int target_part) const {
    const int source_part = part_at(c.x, c.y);
    const AtlasCell from = tile_origin(source_part);
    const AtlasCell to = tile_origin(target_part);
    const int lx = c.x - from.x;
    const int ly = c.y - from.y;
    return {to.x + (tile_size_ - 1 - lx), to.y + ly};
}

CoordinateMap make_coordinate_map(const AtlasLayout& layout) {
    return CoordinateMap(layout.atlas_size(), layout.atlas_size(), kInvalidCoord);
}

std::optional<Rgb> bilinear_at(const RgbImage& img, double x, double y) {
    const int w = img.width();
    const int h = img.height();
    if (!(x >= 0.0 && y >= 0.0 && x <= w - 1 && y <= h - 1)) return std::nullopt;
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = x0 + 1 < w ? x0 + 1 : x0;
    const int y1 = y0 + 1 < h ? y0 + 1 : y0;
    const double wx = x - x0;
    const double wy = y - y0;
    const Rgb& p00 = img(x0, y0);
    const Rgb& p10 = img(x1, y0);
    const Rgb& p01 = img(x0, y1);
    const Rgb& p11 = img(x1, y1);
    auto mix = [&](float Rgb::*c) {
        const double top = p00.*c * (1.0 - wx) + p10.*c * wx;
        const double bottom = p01.*c * (1.0 - wx) + p11.*c * wx;
        return static_cast<float>(top * (1.0 - wy) + bottom * wy);
    };
    return Rgb{mix(&Rgb::r), mix(&Rgb::g), mix(&Rgb::b)};
}

TextureMap bilinear_sample(const RgbImage& img, const CoordinateMap& coords) {
    if (img.empty()) throw DimensionError("bilinear_sample: zero-sized image");
    require_same_shape(coords.values, coords.valid, "bilinear_sample");
    TextureMap out(coords.width(), coords.height());
    for (std::size_t i = 0; i < coords.values.size(); ++i) {
        if (!coords.valid[i]) continue;
        const Coord c = coords.values[i];
        if (auto rgb = bilinear_at(img, c.x, c.y)) {
            out.values[i] = *rgb;
            out.valid[i] = 1;
        }
    }
    return out;
}

namespace {

void check_layout(const AtlasLayout& layout, int w, int h, const char* what) {
    if (w != layout.atlas_size() || h != layout.atlas_size()) {
        throw DimensionError(std::string(what) + ": atlas map is " + std::to_string(w) + "x" +
                             std::to_string(h) + ", layout expects " +
                             std::to_string(layout.atlas_size()));
    }
}

}  // namespace

I2uvResult i2uv(const RgbImage& img, const IuvMap& pose, const AtlasLayout& layout) {
    require_same_shape(img, pose.parts(), "i2uv");
    I2uvResult out{TextureMap(layout.atlas_size(), layout.atlas_size()),
                   make_coordinate_map(layout)};
    for (int y = 0; y < pose.height(); ++y) {
        for (int x = 0; x < pose.width(); ++x) {
            const int part = pose.part(x, y);
            if (part == 0) continue;
            const AtlasCell c = layout.cell(part, pose.u(x, y), pose.v(x, y));
            out.coords.values(c.x, c.y) = {static_cast<float>(x), static_cast<float>(y)};
            out.coords.valid(c.x, c.y) = 1;
            out.texture.values(c.x, c.y) = img(x, y);
            out.texture.valid(c.x, c.y) = 1;
        }
    }
    return out;
}

CoordinateMap pose_coordinates(const IuvMap& pose, const AtlasLayout& layout) {
    CoordinateMap coords = make_coordinate_map(layout);
    for (int y = 0; y < pose.height(); ++y) {
        for (int x = 0; x < pose.width(); ++x) {
            const int part = pose.part(x, y);
            if (part == 0) continue;
            const AtlasCell c = layout.cell(part, pose.u(x, y), pose.v(x, y));
            coords.values(c.x, c.y) = {static_cast<float>(x), static_cast<float>(y)};
            coords.valid(c.x, c.y) = 1;
        }
    }
    return coords;
}

template <class T>
MaskedGrid<T> uv2i(const MaskedGrid<T>& map, const IuvMap& pose, const AtlasLayout& layout,
                   T fill) {
    check_layout(layout, map.width(), map.height(), "uv2i");
    MaskedGrid<T> out(pose.width(), pose.height(), fill);
    for (int y = 0; y < pose.height(); ++y) {
        for (int x = 0; x < pose.width(); ++x) {
            const int part = pose.part(x, y);
            if (part == 0) continue;
            const AtlasCell c = layout.cell(part, pose.u(x, y), pose.v(x, y));
            if (!map.valid(c.x, c.y)) continue;
            out.values(x, y) = map.values(c.x, c.y);
            out.valid(x, y) = 1;
        }
    }
    return out;
}

template MaskedGrid<Rgb> uv2i(const MaskedGrid<Rgb>&, const IuvMap&, const AtlasLayout&, Rgb);
template MaskedGrid<Coord> uv2i(const MaskedGrid<Coord>&, const IuvMap&, const AtlasLayout&,
                                Coord);

}  // namespace unselfie
