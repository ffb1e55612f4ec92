// Runtime selection between the scalar and AVX2 kernels. No intrinsics here.

#include <atomic>

#include "unselfie/error.hpp"
#include "unselfie/simd/kernels.hpp"

namespace unselfie::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(UNSELFIE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Isa>& active() noexcept {
    static std::atomic<Isa> isa{detect_isa()};
    return isa;
}

template <class... Spans>
void require_lengths(std::size_t n, const Spans&... spans) {
    if (((spans.size() != n) || ...)) {
        throw DimensionError("simd kernel: operand lengths differ");
    }
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Avx2:
            return "avx2";
        case Isa::Scalar:
            break;
    }
    return "scalar";
}

Isa detect_isa() noexcept { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) noexcept {
    if (isa == Isa::Avx2 && !cpu_has_avx2()) isa = Isa::Scalar;
    active().store(isa, std::memory_order_relaxed);
    return isa;
}

std::size_t count_label_mismatch(std::span<const std::uint8_t> label_a,
                                 std::span<const std::uint8_t> label_b,
                                 std::span<const std::uint8_t> mask_a,
                                 std::span<const std::uint8_t> mask_b) {
    const std::size_t n = label_a.size();
    require_lengths(n, label_b, mask_a, mask_b);
#if defined(UNSELFIE_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) {
        return avx2::count_label_mismatch(label_a.data(), label_b.data(), mask_a.data(),
                                          mask_b.data(), n);
    }
#endif
    return scalar::count_label_mismatch(label_a.data(), label_b.data(), mask_a.data(),
                                        mask_b.data(), n);
}

UvDistanceSum uv_distance_sum(std::span<const float> u_a, std::span<const float> v_a,
                              std::span<const float> u_b, std::span<const float> v_b,
                              std::span<const std::uint8_t> mask_a,
                              std::span<const std::uint8_t> mask_b) {
    const std::size_t n = u_a.size();
    require_lengths(n, v_a, u_b, v_b, mask_a, mask_b);
#if defined(UNSELFIE_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) {
        return avx2::uv_distance_sum(u_a.data(), v_a.data(), u_b.data(), v_b.data(),
                                     mask_a.data(), mask_b.data(), n);
    }
#endif
    return scalar::uv_distance_sum(u_a.data(), v_a.data(), u_b.data(), v_b.data(), mask_a.data(),
                                   mask_b.data(), n);
}

void blend(std::span<const float> fg, std::span<const float> bg, std::span<const float> alpha,
           std::span<const std::uint8_t> keep, std::span<float> out) {
    const std::size_t n = fg.size();
    require_lengths(n, bg, alpha, keep, out);
#if defined(UNSELFIE_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) {
        avx2::blend(fg.data(), bg.data(), alpha.data(), keep.data(), out.data(), n);
        return;
    }
#endif
    scalar::blend(fg.data(), bg.data(), alpha.data(), keep.data(), out.data(), n);
}

}  // namespace unselfie::simd
