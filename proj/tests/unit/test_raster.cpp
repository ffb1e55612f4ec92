#include "doctest.h"
#include "unselfie/raster.hpp"

using namespace unselfie;

TEST_CASE("disk dilation of one pixel matches offset enumeration") {
    BitMask m(15, 15);
    m(7, 7) = 1;
    const BitMask d = dilate_disk(m, 3);

    std::size_t expected = 0;
    for (int dy = -3; dy <= 3; ++dy) {
        for (int dx = -3; dx <= 3; ++dx) {
            const bool inside = dx * dx + dy * dy <= 9;
            expected += inside;
            CHECK(static_cast<bool>(d(7 + dx, 7 + dy)) == inside);
        }
    }
    CHECK(expected == 29);
    CHECK(count(d) == expected);
}

TEST_CASE("dilation clips at the border") {
    BitMask m(4, 4);
    m(0, 0) = 1;
    const BitMask d = dilate_disk(m, 1);
    CHECK(count(d) == 3);
}

TEST_CASE("mask algebra") {
    BitMask a(2, 2), b(2, 2);
    a[0] = a[1] = 1;
    b[1] = b[2] = 1;
    CHECK(count(mask_union(a, b)) == 3);
    CHECK(count(mask_intersection(a, b)) == 1);
    CHECK(count(mask_difference(a, b)) == 1);
    CHECK(count(mask_complement(a)) == 2);
    CHECK_THROWS_AS(mask_union(a, BitMask(3, 2)), DimensionError);
}

TEST_CASE("nearest resize keeps binary values and block structure") {
    BitMask m(2, 2);
    m(1, 0) = 1;
    const BitMask big = resize_nearest(m, 4, 4);
    CHECK(count(big) == 4);
    CHECK(big(2, 0) == 1);
    CHECK(big(3, 1) == 1);
    CHECK(big(1, 1) == 0);
    CHECK(resize_nearest(big, 2, 2) == m);
}

TEST_CASE("negative dimensions are rejected") {
    CHECK_THROWS_AS(BitMask(-1, 3), DimensionError);
}
