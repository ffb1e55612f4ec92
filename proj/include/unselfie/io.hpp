#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "unselfie/atlas.hpp"
#include "unselfie/iuv.hpp"
#include "unselfie/raster.hpp"

namespace unselfie::io {

namespace fs = std::filesystem;

/// 8-bit interleaved pixels as stored in a PNG.
struct Pixels8 {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;
};

/// Reads any PNG converted to `channels` (1 or 3) 8-bit channels.
Pixels8 read_png(const fs::path& path, int channels);
void write_png(const fs::path& path, const Pixels8& pixels);

RgbImage load_rgb(const fs::path& path);
void save_rgb(const fs::path& path, const RgbImage& img);

GrayImage load_gray(const fs::path& path);
void save_gray(const fs::path& path, const GrayImage& img);

/// Masks are 0/255 grayscale; any value above 127 reads as set.
BitMask load_mask(const fs::path& path);
void save_mask(const fs::path& path, const BitMask& mask);

/// IUV files are 8-bit RGB PNGs: channel 0 the part label (0..24 verbatim),
/// channels 1 and 2 round(255 u) and round(255 v). Files that are not 8-bit
/// RGB, or carry a label above 24, raise FormatError naming the file.
IuvMap load_iuv(const fs::path& path);
void save_iuv(const fs::path& path, const IuvMap& pose);

/// Quantises u or v the way the IUV file stores it.
inline std::uint8_t quantize_unit(float u) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(u, 0.0f, 1.0f) * 255.0f));
}

/// `<stem>.png` holds the colours (zero where invalid), `<stem>_valid.png` the mask.
void save_texture(const fs::path& stem, const TextureMap& texture);
TextureMap load_texture(const fs::path& stem);

/// `<stem>.bin` holds little-endian float32 (x, y) per cell in row-major
/// order, sentinel (-1, -1) where invalid; `<stem>_valid.png` the mask.
void save_coords(const fs::path& stem, const CoordinateMap& coords);
CoordinateMap load_coords(const fs::path& stem);

/// Raw coordinate binary; the grid is square and its side is inferred from the file size.
std::vector<Coord> read_coord_bin(const fs::path& path, int& side);
void write_coord_bin(const fs::path& path, const Grid<Coord>& values);

/// `<stem>.png` / `<stem>_valid.png` given a path with or without extension.
fs::path with_suffix(const fs::path& stem, const std::string& suffix);

}  // namespace unselfie::io
