#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "unselfie/error.hpp"

namespace unselfie {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

struct Rgb {
    float r = 0.0f;
    float g = 0.0f;
    float b = 0.0f;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Dense row-major 2D array. Every raster type in the library is a Grid.
template <class T>
class Grid {
public:
    using value_type = T;

    Grid() = default;
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height), data_(checked_size(width, height), fill) {}

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    T& operator()(int x, int y) { return data_[index(x, y)]; }
    const T& operator()(int x, int y) const { return data_[index(x, y)]; }

    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::span<T> pixels() noexcept { return data_; }
    std::span<const T> pixels() const noexcept { return data_; }

    std::span<T> row(int y) { return std::span<T>(data_).subspan(index(0, y), width_); }
    std::span<const T> row(int y) const {
        return std::span<const T>(data_).subspan(index(0, y), width_);
    }

    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    template <class U>
    bool same_shape(const Grid<U>& other) const noexcept {
        return width_ == other.width() && height_ == other.height();
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    static std::size_t checked_size(int width, int height) {
        if (width < 0 || height < 0) {
            throw DimensionError("negative raster dimensions");
        }
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using RgbImage = Grid<Rgb>;
/// Single-channel real image (mattes, alpha).
using GrayImage = Grid<float>;
/// Binary raster stored as 0/1 bytes so that kernels can stream it.
using BitMask = Grid<std::uint8_t>;

template <class A, class B>
void require_same_shape(const Grid<A>& a, const Grid<B>& b, const char* what) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(what) + ": operand sizes differ (" +
                             std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                             " vs " + std::to_string(b.width()) + "x" +
                             std::to_string(b.height()) + ")");
    }
}

inline std::size_t count(const BitMask& mask) {
    std::size_t n = 0;
    for (auto bit : mask.pixels()) n += bit != 0;
    return n;
}

BitMask mask_union(const BitMask& a, const BitMask& b);
BitMask mask_intersection(const BitMask& a, const BitMask& b);
BitMask mask_difference(const BitMask& a, const BitMask& b);
BitMask mask_complement(const BitMask& a);

/// Dilation by a Euclidean disk of the given radius (offsets with dx^2 + dy^2 <= r^2).
BitMask dilate_disk(const BitMask& mask, int radius);

/// Nearest-neighbour resize, used to bring masks to other spatial sizes.
BitMask resize_nearest(const BitMask& mask, int width, int height);

/// Bilinear resize of a colour image to an exact size.
RgbImage resize_bilinear(const RgbImage& img, int width, int height);

}  // namespace unselfie
