#include "unselfie/iuv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace unselfie {

void IuvMap::set(int x, int y, int part, float u, float v) {
    if (part < 0 || part > kMaxPart) {
        throw FormatError("part index " + std::to_string(part) + " outside 0.." +
                          std::to_string(kMaxPart));
    }
    if (part == 0) {
        u = 0.0f;
        v = 0.0f;
    } else if (!(u >= 0.0f && u <= 1.0f && v >= 0.0f && v <= 1.0f)) {
        throw FormatError("surface coordinate outside [0,1]");
    }
    part_(x, y) = static_cast<std::uint8_t>(part);
    u_(x, y) = u;
    v_(x, y) = v;
}

BitMask IuvMap::foreground() const {
    BitMask out(width(), height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = part_[i] > 0 ? 1 : 0;
    return out;
}

BitMask IuvMap::part_mask(std::span<const int> labels) const {
    BitMask out(width(), height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int p = part_[i];
        out[i] = std::find(labels.begin(), labels.end(), p) != labels.end() ? 1 : 0;
    }
    return out;
}

}  // namespace unselfie
