#include <cmath>

#include "unselfie/simd/kernels.hpp"

namespace unselfie::simd::scalar {

std::size_t count_label_mismatch(const std::uint8_t* la, const std::uint8_t* lb,
                                 const std::uint8_t* ma, const std::uint8_t* mb, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        count += ((ma[i] | mb[i]) != 0) && la[i] != lb[i];
    }
    return count;
}

UvDistanceSum uv_distance_sum(const float* ua, const float* va, const float* ub, const float* vb,
                              const std::uint8_t* ma, const std::uint8_t* mb, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t overlap = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(ma[i] && mb[i])) continue;
        const double du = static_cast<double>(ua[i]) - static_cast<double>(ub[i]);
        const double dv = static_cast<double>(va[i]) - static_cast<double>(vb[i]);
        const double sq = du * du;
        const double sq2 = dv * dv;
        lane[i & 3] += std::sqrt(sq + sq2);
        ++overlap;
    }
    return {(lane[0] + lane[1]) + (lane[2] + lane[3]), overlap};
}

void blend(const float* fg, const float* bg, const float* alpha, const std::uint8_t* keep,
           float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const float a = alpha[i];
        const float front = fg[i] * a;
        const float back = bg[i] * (1.0f - a);
        out[i] = keep[i] ? front + back : 0.0f;
    }
}

}  // namespace unselfie::simd::scalar
