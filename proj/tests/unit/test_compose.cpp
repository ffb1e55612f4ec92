#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "unselfie/compose.hpp"
#include "unselfie/error.hpp"
#include "unselfie/simd/kernels.hpp"

using namespace unselfie;
using namespace unselfie::testing;

TEST_CASE("hole spec is the union of both bodies") {
    BitMask a(3, 1);
    BitMask b(3, 1);
    a[0] = 1;
    b[2] = 1;
    const HoleSpec h = HoleSpec::make(a, b);
    CHECK(h.combined[0] == 1);
    CHECK(h.combined[1] == 0);
    CHECK(h.combined[2] == 1);
}

TEST_CASE("body mask from a matte or a pose") {
    GrayImage matte(3, 1);
    matte[0] = 0.1f;
    matte[1] = 0.11f;
    matte[2] = 1.0f;
    const BitMask m = body_mask({nullptr, &matte});
    CHECK(m[0] == 0);
    CHECK(m[1] == 1);
    CHECK(m[2] == 1);

    IuvMap pose(15, 15);
    pose.set(7, 7, 2, 0.5f, 0.5f);
    CHECK(count(body_mask({&pose, nullptr})) == 29);
    CHECK(count(body_mask({&pose, nullptr}, 0.1, 0)) == 1);

    CHECK_THROWS_AS(body_mask({}), InvalidArgument);
    CHECK_THROWS_AS(body_mask({&pose, &matte}), InvalidArgument);
}

TEST_CASE("head mask reaches down over the neck") {
    IuvMap pose(30, 30);
    pose.set(10, 5, 23, 0.5f, 0.5f);
    const std::vector<int> head{23, 24};
    const BitMask h = head_neck_mask(pose, head, 2);
    CHECK(h(10, 5) == 1);
    CHECK(h(12, 5) == 1);
    CHECK(h(10, 3) == 1);
    CHECK(h(10, 2) == 0);
    CHECK(h(10, 9) == 1);
    CHECK(h(12, 9) == 1);
    CHECK(h(10, 10) == 0);
    CHECK(h(13, 5) == 0);
    CHECK(count(head_neck_mask(IuvMap(5, 5), head, 2)) == 0);
}

TEST_CASE("background holes are exactly body minus head") {
    Rng rng(3);
    const RgbImage img = random_image(16, 16, rng);
    BitMask body(16, 16);
    BitMask head(16, 16);
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
            body(x, y) = (x + y) % 2 == 0;
            head(x, y) = y < 4;
        }
    }
    const BackgroundPlate p = make_background(img, body, head);
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
            const bool hole = (x + y) % 2 == 0 && y >= 4;
            REQUIRE(p.holes(x, y) == hole);
            REQUIRE(p.image(x, y) == (hole ? Rgb{} : img(x, y)));
        }
    }
}

TEST_CASE("background fill stays within the surrounding colours") {
    RgbImage img(20, 20);
    BitMask holes(20, 20);
    for (int y = 0; y < 20; ++y) {
        for (int x = 0; x < 20; ++x) {
            const float g = x / 19.0f;
            img(x, y) = {g, 0.5f, 1.0f - g};
            if (x >= 6 && x <= 13 && y >= 6 && y <= 13) {
                holes(x, y) = 1;
                img(x, y) = {};
            }
        }
    }
    const RgbImage out = fill_background({img, holes});
    for (int y = 6; y <= 13; ++y) {
        for (int x = 6; x <= 13; ++x) {
            CHECK(out(x, y).r >= 5 / 19.0f - 1e-6f);
            CHECK(out(x, y).r <= 14 / 19.0f + 1e-6f);
            CHECK(out(x, y).g == doctest::Approx(0.5f));
        }
    }
    CHECK(out(0, 0) == img(0, 0));
    CHECK_THROWS_AS(fill_background({RgbImage(2, 2), BitMask(2, 2, 1)}), InvalidArgument);
}

TEST_CASE("baseline alpha ramps inward and clears the head") {
    BitMask fg(11, 11);
    for (int y = 2; y <= 8; ++y) {
        for (int x = 2; x <= 8; ++x) fg(x, y) = 1;
    }
    BitMask head(11, 11);
    head(5, 2) = 1;
    const GrayImage a = baseline_alpha(fg, head, 2);
    CHECK(a(0, 0) == 0.0f);
    CHECK(a(2, 5) == doctest::Approx(1.0 / 3.0));
    CHECK(a(3, 5) == doctest::Approx(2.0 / 3.0));
    CHECK(a(5, 5) == 1.0f);
    CHECK(a(5, 2) == 0.0f);
    for (float v : a.pixels()) {
        CHECK(v >= 0.0f);
        CHECK(v <= 1.0f);
    }
}

TEST_CASE("blend is a convex combination with invalid pixels zeroed") {
    Rng rng(13);
    const RgbImage fg = random_image(17, 9, rng);
    const RgbImage bg = random_image(17, 9, rng);
    GrayImage alpha(17, 9);
    BitMask invalid(17, 9);
    std::uniform_real_distribution<float> unit(0.0f, 1.0f);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        alpha[i] = unit(rng);
        invalid[i] = i % 7 == 0;
    }
    const BlendResult r = blend(fg, alpha, bg, invalid);
    CHECK_FALSE(r.alpha_clamped);
    for (std::size_t i = 0; i < fg.size(); ++i) {
        if (invalid[i]) {
            REQUIRE(r.image[i] == Rgb{});
            continue;
        }
        const double a = alpha[i];
        REQUIRE(r.image[i].r == doctest::Approx(fg[i].r * a + bg[i].r * (1 - a)).epsilon(1e-6));
        REQUIRE(r.image[i].b >= std::min(fg[i].b, bg[i].b) - 1e-6f);
        REQUIRE(r.image[i].b <= std::max(fg[i].b, bg[i].b) + 1e-6f);
    }

    const simd::Isa isa = simd::active_isa();
    simd::set_active_isa(simd::Isa::Scalar);
    const BlendResult s = blend(fg, alpha, bg, invalid);
    simd::set_active_isa(isa);
    CHECK(s.image == r.image);
}

TEST_CASE("out-of-range alpha is clamped and reported") {
    const RgbImage fg(2, 1, Rgb{1.0f, 1.0f, 1.0f});
    const RgbImage bg(2, 1);
    GrayImage alpha(2, 1);
    alpha[0] = 1.5f;
    alpha[1] = -0.5f;
    const BlendResult r = blend(fg, alpha, bg, BitMask(2, 1));
    CHECK(r.alpha_clamped);
    CHECK(r.image[0] == Rgb{1.0f, 1.0f, 1.0f});
    CHECK(r.image[1] == Rgb{});
}

TEST_CASE("g2 losses on a 2x2 toy") {
    const RgbImage out(2, 2);
    RgbImage target(2, 2);
    target[0] = {1.0f, 0.0f, 0.0f};
    BitMask holes(2, 2);
    holes[0] = 1;
    GrayImage alpha(2, 2);
    alpha[0] = 1.0f;
    G2Losses l = g2_losses(out, target, alpha, holes);
    CHECK(l.reconstruction == 0.5);
    CHECK(l.alpha == 0.0);
    CHECK(l.combined == 5.0);
    CHECK_FALSE(l.perceptual_included);
    CHECK_FALSE(l.adversarial_included);

    // same error outside the holes weighs half as much
    RgbImage target2(2, 2);
    target2[1] = {1.0f, 0.0f, 0.0f};
    CHECK(g2_losses(out, target2, alpha, holes).reconstruction == 0.25);

    l = g2_losses(out, target, GrayImage(2, 2), holes);
    CHECK(l.alpha == 0.25);
    CHECK_THROWS_AS(g2_losses(out, RgbImage(2, 3), alpha, holes), DimensionError);
}
