#pragma once

#include <cstdint>

#include "unselfie/raster.hpp"

namespace unselfie {

/// Highest body-part label in the 24-part dense pose convention; 0 is background.
inline constexpr int kMaxPart = 24;

/// Per-pixel dense pose: part label plus continuous surface coordinates (u, v).
///
/// u and v are only meaningful where part > 0. Background pixels always hold
/// u = v = 0, and `set` rejects labels above 24 or surface coordinates outside
/// [0, 1], so a constructed map never violates either invariant.
class IuvMap {
public:
    IuvMap() = default;
    IuvMap(int width, int height) : part_(width, height), u_(width, height), v_(width, height) {}

    int width() const noexcept { return part_.width(); }
    int height() const noexcept { return part_.height(); }
    bool contains(int x, int y) const noexcept { return part_.contains(x, y); }

    int part(int x, int y) const { return part_(x, y); }
    float u(int x, int y) const { return u_(x, y); }
    float v(int x, int y) const { return v_(x, y); }

    void set(int x, int y, int part, float u, float v);
    void clear(int x, int y) { set(x, y, 0, 0.0f, 0.0f); }

    const Grid<std::uint8_t>& parts() const noexcept { return part_; }
    const GrayImage& us() const noexcept { return u_; }
    const GrayImage& vs() const noexcept { return v_; }

    /// Pixels with part > 0.
    BitMask foreground() const;
    /// Pixels whose label is any of `labels`.
    BitMask part_mask(std::span<const int> labels) const;

    friend bool operator==(const IuvMap&, const IuvMap&) = default;

private:
    Grid<std::uint8_t> part_;
    GrayImage u_;
    GrayImage v_;
};

}  // namespace unselfie
