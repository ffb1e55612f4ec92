#include "unselfie/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace unselfie::io {

namespace {

std::string describe(const fs::path& path, const char* what) {
    return path.string() + ": " + what;
}

float to_unit(std::uint8_t v) { return static_cast<float>(v) / 255.0f; }

std::uint8_t to_byte(float v) {
    if (!(v > 0.0f)) return 0;
    return static_cast<std::uint8_t>(std::lround(std::min(v, 1.0f) * 255.0f));
}

}  // namespace

fs::path with_suffix(const fs::path& stem, const std::string& suffix) {
    fs::path base = stem;
    base.replace_extension();
    return base.string() + suffix;
}

Pixels8 read_png(const fs::path& path, int channels) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        throw FormatError(describe(path, image.message));
    }
    image.format = channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    Pixels8 out{static_cast<int>(image.width), static_cast<int>(image.height), channels, {}};
    out.data.resize(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, out.data.data(), 0, nullptr)) {
        png_image_free(&image);
        throw FormatError(describe(path, image.message));
    }
    return out;
}

void write_png(const fs::path& path, const Pixels8& pixels) {
    if (pixels.width <= 0 || pixels.height <= 0) {
        throw DimensionError(describe(path, "refusing to write an empty image"));
    }
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(pixels.width);
    image.height = static_cast<png_uint_32>(pixels.height);
    image.format = pixels.channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data.data(), 0, nullptr)) {
        throw FormatError(describe(path, image.message));
    }
}

RgbImage load_rgb(const fs::path& path) {
    const Pixels8 px = read_png(path, 3);
    RgbImage img(px.width, px.height);
    for (std::size_t i = 0; i < img.size(); ++i) {
        img[i] = {to_unit(px.data[3 * i]), to_unit(px.data[3 * i + 1]),
                  to_unit(px.data[3 * i + 2])};
    }
    return img;
}

void save_rgb(const fs::path& path, const RgbImage& img) {
    Pixels8 px{img.width(), img.height(), 3, std::vector<std::uint8_t>(3 * img.size())};
    for (std::size_t i = 0; i < img.size(); ++i) {
        px.data[3 * i] = to_byte(img[i].r);
        px.data[3 * i + 1] = to_byte(img[i].g);
        px.data[3 * i + 2] = to_byte(img[i].b);
    }
    write_png(path, px);
}

GrayImage load_gray(const fs::path& path) {
    const Pixels8 px = read_png(path, 1);
    GrayImage img(px.width, px.height);
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = to_unit(px.data[i]);
    return img;
}

void save_gray(const fs::path& path, const GrayImage& img) {
    Pixels8 px{img.width(), img.height(), 1, std::vector<std::uint8_t>(img.size())};
    for (std::size_t i = 0; i < img.size(); ++i) px.data[i] = to_byte(img[i]);
    write_png(path, px);
}

BitMask load_mask(const fs::path& path) {
    const Pixels8 px = read_png(path, 1);
    BitMask mask(px.width, px.height);
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = px.data[i] > 127 ? 1 : 0;
    return mask;
}

void save_mask(const fs::path& path, const BitMask& mask) {
    Pixels8 px{mask.width(), mask.height(), 1, std::vector<std::uint8_t>(mask.size())};
    for (std::size_t i = 0; i < mask.size(); ++i) px.data[i] = mask[i] ? 255 : 0;
    write_png(path, px);
}

IuvMap load_iuv(const fs::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        throw FormatError(describe(path, image.message));
    }
    const bool rgb8 = (image.format & PNG_FORMAT_FLAG_COLOR) &&
                      !(image.format & PNG_FORMAT_FLAG_LINEAR) &&
                      !(image.format & PNG_FORMAT_FLAG_COLORMAP);
    png_image_free(&image);
    if (!rgb8) throw FormatError(describe(path, "IUV map must be an 8-bit RGB PNG"));

    const Pixels8 px = read_png(path, 3);
    IuvMap pose(px.width, px.height);
    for (int y = 0; y < px.height; ++y) {
        for (int x = 0; x < px.width; ++x) {
            const std::size_t i = 3 * (static_cast<std::size_t>(y) * px.width + x);
            const int part = px.data[i];
            if (part > kMaxPart) {
                throw FormatError(describe(path, "part index above 24") + " (value " +
                                  std::to_string(part) + " at " + std::to_string(x) + "," +
                                  std::to_string(y) + ")");
            }
            if (part > 0) pose.set(x, y, part, to_unit(px.data[i + 1]), to_unit(px.data[i + 2]));
        }
    }
    return pose;
}

void save_iuv(const fs::path& path, const IuvMap& pose) {
    Pixels8 px{pose.width(), pose.height(), 3,
               std::vector<std::uint8_t>(3 * static_cast<std::size_t>(pose.width()) *
                                         pose.height())};
    for (int y = 0; y < pose.height(); ++y) {
        for (int x = 0; x < pose.width(); ++x) {
            const std::size_t i = 3 * (static_cast<std::size_t>(y) * pose.width() + x);
            px.data[i] = static_cast<std::uint8_t>(pose.part(x, y));
            px.data[i + 1] = quantize_unit(pose.u(x, y));
            px.data[i + 2] = quantize_unit(pose.v(x, y));
        }
    }
    write_png(path, px);
}

void save_texture(const fs::path& stem, const TextureMap& texture) {
    RgbImage colours = texture.values;
    for (std::size_t i = 0; i < colours.size(); ++i) {
        if (!texture.valid[i]) colours[i] = Rgb{};
    }
    save_rgb(with_suffix(stem, ".png"), colours);
    save_mask(with_suffix(stem, "_valid.png"), texture.valid);
}

TextureMap load_texture(const fs::path& stem) {
    TextureMap t;
    t.values = load_rgb(with_suffix(stem, ".png"));
    t.valid = load_mask(with_suffix(stem, "_valid.png"));
    require_same_shape(t.values, t.valid, "load_texture");
    return t;
}

void write_coord_bin(const fs::path& path, const Grid<Coord>& values) {
    std::vector<char> bytes;
    bytes.reserve(values.size() * 8);
    auto put = [&](float f) {
        const auto bits = std::bit_cast<std::uint32_t>(f);
        for (int b = 0; b < 4; ++b) bytes.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
    };
    for (const Coord& c : values.pixels()) {
        put(c.x);
        put(c.y);
    }
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError(describe(path, "write failed"));
}

std::vector<Coord> read_coord_bin(const fs::path& path, int& side) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(describe(path, "cannot open"));
    const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                           std::istreambuf_iterator<char>());
    const std::size_t cells = bytes.size() / 8;
    side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cells))));
    if (bytes.size() % 8 != 0 || static_cast<std::size_t>(side) * side != cells) {
        throw FormatError(describe(path, "size is not a square grid of float32 pairs"));
    }
    auto get = [&](std::size_t offset) {
        std::uint32_t bits = 0;
        for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(bytes[offset + b]) << (8 * b);
        return std::bit_cast<float>(bits);
    };
    std::vector<Coord> out(cells);
    for (std::size_t i = 0; i < cells; ++i) out[i] = {get(8 * i), get(8 * i + 4)};
    return out;
}

void save_coords(const fs::path& stem, const CoordinateMap& coords) {
    Grid<Coord> values = coords.values;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!coords.valid[i]) values[i] = kInvalidCoord;
    }
    write_coord_bin(with_suffix(stem, ".bin"), values);
    save_mask(with_suffix(stem, "_valid.png"), coords.valid);
}

CoordinateMap load_coords(const fs::path& stem) {
    int side = 0;
    const std::vector<Coord> raw = read_coord_bin(with_suffix(stem, ".bin"), side);
    CoordinateMap c(side, side, kInvalidCoord);
    std::copy(raw.begin(), raw.end(), c.values.pixels().begin());
    c.valid = load_mask(with_suffix(stem, "_valid.png"));
    require_same_shape(c.values, c.valid, "load_coords");
    for (std::size_t i = 0; i < c.valid.size(); ++i) {
        if (c.valid[i] && !(std::isfinite(c.values[i].x) && std::isfinite(c.values[i].y))) {
            throw FormatError(describe(with_suffix(stem, ".bin"), "valid cell is not finite"));
        }
    }
    return c;
}

}  // namespace unselfie::io
