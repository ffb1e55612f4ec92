#pragma once

// Data-parallel inner loops of the pose distances and the compositing blend.
//
// Every kernel has a scalar reference in `simd::scalar` and, where the
// compiler supports it, an AVX2 variant in `simd::avx2`. The public entry
// points in `simd` dispatch at runtime. All variants of a kernel are
// bit-identical: floating-point sums are accumulated in four interleaved
// lanes (element i goes to lane i % 4) and combined as (l0 + l1) + (l2 + l3)
// in every variant, and no variant contracts multiply-add.

#include <cstddef>
#include <cstdint>
#include <span>

namespace unselfie::simd {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa) noexcept;

/// Best ISA this binary was built with and the CPU supports.
Isa detect_isa() noexcept;

/// ISA used by the dispatching entry points. Defaults to detect_isa().
Isa active_isa() noexcept;

/// Forces the dispatch target; requesting an unavailable ISA falls back to scalar.
/// Returns the ISA actually selected.
Isa set_active_isa(Isa isa) noexcept;

struct UvDistanceSum {
    double sum = 0.0;
    std::size_t overlap = 0;
};

/// Number of i with (mask_a[i] | mask_b[i]) != 0 and label_a[i] != label_b[i].
std::size_t count_label_mismatch(std::span<const std::uint8_t> label_a,
                                 std::span<const std::uint8_t> label_b,
                                 std::span<const std::uint8_t> mask_a,
                                 std::span<const std::uint8_t> mask_b);

/// Sum over i with mask_a[i] & mask_b[i] of ||(u_a, v_a) - (u_b, v_b)||_2,
/// computed in double, plus the size of that intersection.
UvDistanceSum uv_distance_sum(std::span<const float> u_a, std::span<const float> v_a,
                              std::span<const float> u_b, std::span<const float> v_b,
                              std::span<const std::uint8_t> mask_a,
                              std::span<const std::uint8_t> mask_b);

/// out[i] = keep[i] ? fg[i] * alpha[i] + bg[i] * (1 - alpha[i]) : 0.
void blend(std::span<const float> fg, std::span<const float> bg, std::span<const float> alpha,
           std::span<const std::uint8_t> keep, std::span<float> out);

namespace scalar {
std::size_t count_label_mismatch(const std::uint8_t* la, const std::uint8_t* lb,
                                 const std::uint8_t* ma, const std::uint8_t* mb, std::size_t n);
UvDistanceSum uv_distance_sum(const float* ua, const float* va, const float* ub, const float* vb,
                              const std::uint8_t* ma, const std::uint8_t* mb, std::size_t n);
void blend(const float* fg, const float* bg, const float* alpha, const std::uint8_t* keep,
           float* out, std::size_t n);
}  // namespace scalar

#if defined(UNSELFIE_HAVE_AVX2)
namespace avx2 {
std::size_t count_label_mismatch(const std::uint8_t* la, const std::uint8_t* lb,
                                 const std::uint8_t* ma, const std::uint8_t* mb, std::size_t n);
UvDistanceSum uv_distance_sum(const float* ua, const float* va, const float* ub, const float* vb,
                              const std::uint8_t* ma, const std::uint8_t* mb, std::size_t n);
void blend(const float* fg, const float* bg, const float* alpha, const std::uint8_t* keep,
           float* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace unselfie::simd
