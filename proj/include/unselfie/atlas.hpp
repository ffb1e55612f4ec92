#pragma once

#include <optional>
#include <utility>

#include "unselfie/iuv.hpp"
#include "unselfie/raster.hpp"

namespace unselfie {

struct AtlasCell {
    int x = 0;
    int y = 0;

    friend bool operator==(const AtlasCell&, const AtlasCell&) = default;
};

/// Tile arrangement of the UV atlas.
///
/// Parts 1..24 occupy the tiles of a rows x cols grid in row-major order; any
/// tile past part 24 and the strip left over by floor(atlas_size / grid) are
/// dead space that no (part, u, v) ever reaches. With the defaults this is
/// 25 tiles of 51x51 with a 1-pixel dead strip on the right and bottom.
class AtlasLayout {
public:
    AtlasLayout() : AtlasLayout(256, 5, 5) {}
    AtlasLayout(int atlas_size, int rows, int cols);

    int atlas_size() const noexcept { return atlas_size_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    int tile_size() const noexcept { return tile_size_; }

    AtlasCell tile_origin(int part) const;

    /// origin(part) + (round(u * (tile - 1)), round(v * (tile - 1))), ties away from zero.
    AtlasCell cell(int part, float u, float v) const;

    /// Part whose tile contains the cell, or 0 for dead space.
    int part_at(int x, int y) const noexcept;

    /// Reflects a cell across its tile's vertical axis (u -> 1 - u) and moves it
    /// into the tile of `target_part`.
    AtlasCell mirror_cell(AtlasCell c, int target_part) const;

    friend bool operator==(const AtlasLayout&, const AtlasLayout&) = default;

private:
    int atlas_size_;
    int rows_;
    int cols_;
    int tile_size_;
};

/// Image-space coordinate stored in the atlas.
struct Coord {
    float x = 0.0f;
    float y = 0.0f;

    friend bool operator==(const Coord&, const Coord&) = default;
};

inline constexpr Coord kInvalidCoord{-1.0f, -1.0f};

/// A raster with a validity mask. Cells where `valid` is 0 carry a
/// placeholder value and are excluded from every reduction.
template <class T>
struct MaskedGrid {
    Grid<T> values;
    BitMask valid;

    MaskedGrid() = default;
    MaskedGrid(int width, int height, T fill = T{})
        : values(width, height, fill), valid(width, height) {}

    int width() const noexcept { return values.width(); }
    int height() const noexcept { return values.height(); }

    friend bool operator==(const MaskedGrid&, const MaskedGrid&) = default;
};

/// Atlas-domain grid of image-space (x, y); invalid cells hold kInvalidCoord.
using CoordinateMap = MaskedGrid<Coord>;
/// Atlas-domain grid of RGB colours.
using TextureMap = MaskedGrid<Rgb>;

/// Empty coordinate map for a layout: every cell invalid and set to the sentinel.
CoordinateMap make_coordinate_map(const AtlasLayout& layout);

/// Bilinear lookup of `img` at every valid coordinate. Coordinates outside
/// [0, W-1] x [0, H-1] produce invalid cells.
TextureMap bilinear_sample(const RgbImage& img, const CoordinateMap& coords);

/// Single bilinear lookup; nullopt when (x, y) lies outside the pixel lattice.
std::optional<Rgb> bilinear_at(const RgbImage& img, double x, double y);

struct I2uvResult {
    TextureMap texture;
    CoordinateMap coords;
};

/// Scatters every foreground pixel into its atlas cell. When several pixels
/// land on one cell the pixel latest in row-major scan order wins, i.e. the
/// one with the larger y, then the larger x.
I2uvResult i2uv(const RgbImage& img, const IuvMap& pose, const AtlasLayout& layout);

/// Coordinate half of i2uv for callers that have no image.
CoordinateMap pose_coordinates(const IuvMap& pose, const AtlasLayout& layout);

/// Gathers atlas values back through a pose. The result mask is
/// foreground AND valid cell; masked pixels hold `fill`.
template <class T>
MaskedGrid<T> uv2i(const MaskedGrid<T>& map, const IuvMap& pose, const AtlasLayout& layout,
                   T fill = T{});

extern template MaskedGrid<Rgb> uv2i(const MaskedGrid<Rgb>&, const IuvMap&, const AtlasLayout&,
                                     Rgb);
extern template MaskedGrid<Coord> uv2i(const MaskedGrid<Coord>&, const IuvMap&,
                                       const AtlasLayout&, Coord);

}  // namespace unselfie
