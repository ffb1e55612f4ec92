// Built with -mavx2; only reached through the runtime dispatcher once the
// CPU has reported AVX2 support.

#include <immintrin.h>

#include <bit>
#include <cmath>
#include <cstring>

#include "unselfie/simd/kernels.hpp"

namespace unselfie::simd::avx2 {

namespace {

// Four mask bytes widened to 64-bit lanes: all-ones where the byte is nonzero.
inline __m256i widen_mask4(const std::uint8_t* m) {
    std::int32_t raw;
    std::memcpy(&raw, m, sizeof(raw));
    const __m128i bytes = _mm_cvtepu8_epi32(_mm_cvtsi32_si128(raw));
    const __m128i nonzero = _mm_cmpgt_epi32(bytes, _mm_setzero_si128());
    return _mm256_cvtepi32_epi64(nonzero);
}

// Eight mask bytes widened to 32-bit lanes.
inline __m256i widen_mask8(const std::uint8_t* m) {
    const __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(m));
    const __m256i wide = _mm256_cvtepu8_epi32(bytes);
    return _mm256_cmpgt_epi32(wide, _mm256_setzero_si256());
}

}  // namespace

std::size_t count_label_mismatch(const std::uint8_t* la, const std::uint8_t* lb,
                                 const std::uint8_t* ma, const std::uint8_t* mb, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(la + i));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lb + i));
        const __m256i m = _mm256_or_si256(
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ma + i)),
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mb + i)));
        // A byte is skipped when the labels agree or neither mask covers it.
        const __m256i skip = _mm256_or_si256(_mm256_cmpeq_epi8(a, b), _mm256_cmpeq_epi8(m, zero));
        const auto bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(skip));
        count += 32 - static_cast<std::size_t>(std::popcount(bits));
    }
    for (; i < n; ++i) count += ((ma[i] | mb[i]) != 0) && la[i] != lb[i];
    return count;
}

UvDistanceSum uv_distance_sum(const float* ua, const float* va, const float* ub, const float* vb,
                              const std::uint8_t* ma, const std::uint8_t* mb, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t overlap = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i both = _mm256_and_si256(widen_mask4(ma + i), widen_mask4(mb + i));
        const int lanes = _mm256_movemask_pd(_mm256_castsi256_pd(both));
        if (lanes == 0) continue;
        overlap += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(lanes)));
        const __m256d du = _mm256_sub_pd(_mm256_cvtps_pd(_mm_loadu_ps(ua + i)),
                                         _mm256_cvtps_pd(_mm_loadu_ps(ub + i)));
        const __m256d dv = _mm256_sub_pd(_mm256_cvtps_pd(_mm_loadu_ps(va + i)),
                                         _mm256_cvtps_pd(_mm_loadu_ps(vb + i)));
        const __m256d dist =
            _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(du, du), _mm256_mul_pd(dv, dv)));
        acc = _mm256_add_pd(acc, _mm256_and_pd(dist, _mm256_castsi256_pd(both)));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < n; ++i) {
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
    const __m256 one = _mm256_set1_ps(1.0f);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 a = _mm256_loadu_ps(alpha + i);
        const __m256 front = _mm256_mul_ps(_mm256_loadu_ps(fg + i), a);
        const __m256 back = _mm256_mul_ps(_mm256_loadu_ps(bg + i), _mm256_sub_ps(one, a));
        const __m256 mixed = _mm256_add_ps(front, back);
        _mm256_storeu_ps(out + i, _mm256_and_ps(mixed, _mm256_castsi256_ps(widen_mask8(keep + i))));
    }
    for (; i < n; ++i) {
        const float a = alpha[i];
        const float front = fg[i] * a;
        const float back = bg[i] * (1.0f - a);
        out[i] = keep[i] ? front + back : 0.0f;
    }
}

}  // namespace unselfie::simd::avx2
