#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "unselfie/error.hpp"
#include "unselfie/pair_synthesis.hpp"

using namespace unselfie;
using namespace unselfie::testing;

namespace {

const AtlasLayout kLayout(256, 5, 5);

}  // namespace

TEST_CASE("synthetic selfie matches the double-lookup oracle on 8x8 poses") {
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const RgbImage img = random_image(8, 8, rng);
        // coarse u, v so that cells collide and some are shared between poses
        IuvMap target(8, 8);
        IuvMap source(8, 8);
        std::uniform_int_distribution<int> part(0, 4);
        std::uniform_int_distribution<int> q(0, 3);
        for (int y = 0; y < 8; ++y) {
            for (int x = 0; x < 8; ++x) {
                if (int p = part(rng)) target.set(x, y, p, q(rng) / 3.0f, q(rng) / 3.0f);
                if (int p = part(rng)) source.set(x, y, p, q(rng) / 3.0f, q(rng) / 3.0f);
            }
        }
        const SyntheticSelfie s = synth_selfie_image(img, target, source, kLayout);
        for (int y = 0; y < 8; ++y) {
            for (int x = 0; x < 8; ++x) {
                const auto expect = oracle_double_lookup(img, target, source, x, y);
                if (expect) {
                    CHECK(s.image(x, y) == *expect);
                    CHECK(s.holes(x, y) == 0);
                } else {
                    CHECK(s.image(x, y) == Rgb{});
                    CHECK(s.holes(x, y) == (source.part(x, y) != 0 ? 1 : 0));
                }
            }
        }
    }
}

TEST_CASE("source validity is contained in target validity") {
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const RgbImage img = random_image(48, 48, rng);
        const IuvMap target = random_iuv(48, 48, rng, 0.3, 0.5);
        const IuvMap source = random_iuv(48, 48, rng, 0.3, 0.5);
        const UvTrainingPair p = synth_uv_pair(img, target, source, kLayout);
        std::size_t inside = 0;
        for (std::size_t i = 0; i < p.source_coords.valid.size(); ++i) {
            if (!p.source_coords.valid[i]) {
                REQUIRE(p.source_coords.values[i] == kInvalidCoord);
                REQUIRE(p.source_texture.valid[i] == 0);
                continue;
            }
            ++inside;
            REQUIRE(p.target_texture.valid[i] == 1);
            REQUIRE(p.source_texture.valid[i] == 1);
            REQUIRE(p.source_texture.values[i] == p.target_texture.values[i]);
        }
        CHECK(inside > 0);
    }
}

TEST_CASE("identical poses reproduce the portrait where cells are unique") {
    Rng rng(4);
    const IuvMap pose = injective_pose(32, 32, kLayout, rng);
    const RgbImage img = random_image(32, 32, rng);
    const SyntheticSelfie s = synth_selfie_image(img, pose, pose, kLayout);
    CHECK(count(s.holes) == 0);
    for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) {
            if (pose.part(x, y)) CHECK(s.image(x, y) == img(x, y));
        }
    }
}

TEST_CASE("flipping swaps sides and mirrors u") {
    IuvMap pose(4, 2);
    pose.set(0, 0, 15, 0.25f, 0.5f);
    pose.set(1, 1, 2, 0.0f, 1.0f);
    const SymmetryTable table;
    const IuvMap f = flip_horizontal(pose, table);
    CHECK(f.part(3, 0) == 16);
    CHECK(f.u(3, 0) == 0.75f);
    CHECK(f.v(3, 0) == 0.5f);
    CHECK(f.part(2, 1) == 2);
    CHECK(f.u(2, 1) == 1.0f);
    CHECK(f.part(0, 0) == 0);

    Rng rng(6);
    const IuvMap r = random_iuv(9, 7, rng);
    const IuvMap twice = flip_horizontal(flip_horizontal(r, table), table);
    CHECK(twice.parts() == r.parts());
    const RgbImage img = random_image(9, 7, rng);
    CHECK(flip_horizontal(flip_horizontal(img)) == img);
    CHECK(flip_horizontal(img)(0, 3) == img(8, 3));
}

TEST_CASE("background replacement keeps the foreground") {
    const RgbImage img(4, 4, Rgb{1.0f, 1.0f, 1.0f});
    BitMask fg(4, 4);
    fg(1, 1) = 1;
    const RgbImage bg(2, 2, Rgb{0.0f, 0.5f, 0.0f});
    const RgbImage out = replace_background(img, fg, bg);
    CHECK(out(1, 1) == Rgb{1.0f, 1.0f, 1.0f});
    CHECK(out(3, 3) == Rgb{0.0f, 0.5f, 0.0f});
    CHECK_THROWS_AS(replace_background(img, BitMask(3, 4), bg), DimensionError);
}

TEST_CASE("pair synthesis rejects mismatched inputs") {
    const RgbImage img(8, 8);
    CHECK_THROWS_AS(synth_selfie_image(img, IuvMap(8, 8), IuvMap(8, 9), kLayout), DimensionError);
    CHECK_THROWS_AS(synth_uv_pair(img, IuvMap(7, 8), IuvMap(7, 8), kLayout), DimensionError);
}
