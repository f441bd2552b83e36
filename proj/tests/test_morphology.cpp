#include <doctest.h>

#include <cmath>
#include <random>

#include "lesionfuse/error.hpp"
#include "lesionfuse/morphology.hpp"
#include "support/oracles.hpp"

using namespace lesionfuse;

namespace {

BinaryMask from_rows(const std::vector<std::string>& rows) {
    BinaryMask m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c)
            m.at(r, c) = rows[r][c] == '#' ? 1 : 0;
    return m;
}

BinaryMask random_mask(std::mt19937& rng, int w, int h, int fg_percent = 40) {
    BinaryMask m(w, h);
    for (auto& l : m.labels)
        l = (rng() % 100) < static_cast<unsigned>(fg_percent) ? 1 : 0;
    return m;
}

bool subset(const BinaryMask& inner, const BinaryMask& outer) {
    for (std::size_t i = 0; i < inner.labels.size(); ++i)
        if (inner.labels[i] && !outer.labels[i])
            return false;
    return true;
}

}  // namespace

TEST_CASE("fill_holes closes a ring and leaves open shapes alone") {
    BinaryMask ring = from_rows({
        "#####",
        "#...#",
        "#...#",
        "#...#",
        "#####",
    });
    BinaryMask solid = from_rows({
        "#####",
        "#####",
        "#####",
        "#####",
        "#####",
    });
    CHECK(fill_holes(ring) == solid);
    CHECK(fill_holes(solid) == solid);

    BinaryMask c_shape = from_rows({
        "#####",
        "#...#",
        "#...#",
        "#...#",
        "###.#",  // cavity reaches the border through the gap
    });
    CHECK(fill_holes(c_shape) == c_shape);
}

TEST_CASE("a 4-connected ring always encloses its interior") {
    std::mt19937 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        int w = 4 + static_cast<int>(rng() % 8);
        int h = 4 + static_cast<int>(rng() % 8);
        int top = static_cast<int>(rng() % (h - 3));
        int left = static_cast<int>(rng() % (w - 3));
        int bottom = top + 3 + static_cast<int>(rng() % (h - top - 3));
        int right = left + 3 + static_cast<int>(rng() % (w - left - 3));
        BinaryMask ring(w, h);
        for (int r = top; r <= bottom; ++r)
            for (int c = left; c <= right; ++c)
                if (r == top || r == bottom || c == left || c == right)
                    ring.at(r, c) = 1;
        BinaryMask filled = fill_holes(ring);
        for (int r = top; r <= bottom; ++r)
            for (int c = left; c <= right; ++c)
                CHECK(filled.at(r, c) == 1);
    }
}

TEST_CASE("largest_component keeps the biggest 4-connected region") {
    BinaryMask mask = from_rows({
        "##...",
        "##...",
        "#..##",
        ".....",
        "...#.",
    });
    BinaryMask expect = from_rows({
        "##...",
        "##...",
        "#....",
        ".....",
        ".....",
    });
    CHECK(largest_component(mask) == expect);  // 5 beats 2 and 1
    CHECK(largest_component(expect) == expect);
}

TEST_CASE("diagonal pixels are distinct 4-components; scan order breaks the tie") {
    BinaryMask mask = from_rows({
        "#..",
        ".#.",
        "...",
    });
    BinaryMask expect = from_rows({
        "#..",
        "...",
        "...",
    });
    CHECK(largest_component(mask) == expect);
}

TEST_CASE("largest_component on an empty mask signals no lesion") {
    CHECK_THROWS_AS(largest_component(BinaryMask(4, 4)), EmptyMask);
    CHECK_THROWS_AS(component_stats(BinaryMask(4, 4)), EmptyMask);
    CHECK_THROWS_AS(postprocess(BinaryMask(4, 4), 7.0), EmptyMask);
}

TEST_CASE("component_stats measures exact Feret diameters") {
    BinaryMask single(3, 3);
    single.at(1, 1) = 1;
    ComponentStats s1 = component_stats(single);
    CHECK(s1.pixel_count == 1);
    CHECK(s1.diameter == 0.0);

    BinaryMask pair(5, 4);
    pair.at(0, 0) = 1;
    pair.at(3, 4) = 1;
    CHECK(component_stats(pair).diameter == 5.0);  // 3-4-5 triangle

    BinaryMask square = from_rows({
        "###",
        "###",
        "###",
    });
    ComponentStats sq = component_stats(square);
    CHECK(sq.diameter == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sq.diameter == oracle::brute_force_diameter(square));
    CHECK(sq.pixel_count == 9);
    CHECK(sq.max_row - sq.min_row == 2);
    CHECK(sq.max_col - sq.min_col == 2);
}

TEST_CASE("dilation radius follows the floored diameter scaling") {
    CHECK(dilation_radius(512.0, 7.0) == 7);
    CHECK(dilation_radius(100.0, 7.0) == 1);
    CHECK(dilation_radius(73.1, 7.0) == 0);  // floor(511.7/512) = 0
    CHECK(dilation_radius(0.0, 7.0) == 0);
}

TEST_CASE("disk structuring elements contain the origin and are symmetric") {
    for (int r : {0, 1, 2, 3, 7}) {
        StructuringElement se = StructuringElement::disk(r);
        bool has_origin = false, symmetric = true;
        for (auto [dy, dx] : se.offsets) {
            has_origin = has_origin || (dy == 0 && dx == 0);
            bool found = false;
            for (auto [ey, ex] : se.offsets)
                found = found || (ey == -dy && ex == -dx);
            symmetric = symmetric && found;
        }
        CHECK(has_origin);
        CHECK(symmetric);
    }
    CHECK(StructuringElement::disk(0).offsets.size() == 1);
    CHECK(StructuringElement::disk(1).offsets.size() == 5);  // the plus shape
}

TEST_CASE("dilate with radius 0 is the identity; radius 1 stamps a plus") {
    BinaryMask dot(7, 7);
    dot.at(3, 3) = 1;
    CHECK(dilate(dot, StructuringElement::disk(0)) == dot);

    BinaryMask plus(7, 7);
    plus.at(3, 3) = plus.at(2, 3) = plus.at(4, 3) = plus.at(3, 2) = plus.at(3, 4) = 1;
    CHECK(dilate(dot, StructuringElement::disk(1)) == plus);
}

TEST_CASE("morphology matches the brute-force oracles on random masks") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 30; ++rep) {
        BinaryMask mask = random_mask(rng, 12, 12);

        for (int r : {1, 2, 3})
            CHECK(dilate(mask, StructuringElement::disk(r)) == oracle::brute_force_dilate(mask, r));

        BinaryMask filled = fill_holes(mask);
        CHECK(fill_holes(filled) == filled);  // idempotent
        CHECK(subset(mask, filled));          // extensive

        CHECK(subset(mask, dilate(mask, StructuringElement::disk(2))));

        if (mask.foreground_count() > 0) {
            BinaryMask largest = largest_component(mask);
            CHECK(largest_component(largest) == largest);  // idempotent
            CHECK(subset(largest, mask));                  // anti-extensive
            CHECK(component_stats(mask).diameter == oracle::brute_force_diameter(mask));
        }
    }
}

TEST_CASE("postprocess is the identity on a small solid blob") {
    BinaryMask blob = from_rows({
        ".....",
        ".##..",
        ".###.",
        ".##..",
        ".....",
    });
    // diameter ~ 2.83 gives R = floor(7 * 2.83 / 512) = 0
    CHECK(postprocess(blob, 7.0) == blob);
}

TEST_CASE("postprocess fills, keeps the main object and dilates by the scaled radius") {
    BinaryMask input = from_rows({
        "...........",
        ".#####.....",
        ".#...#.....",
        ".#...#.....",
        ".#...#.....",
        ".#####.....",
        "...........",
        "...........",
        "...........",
        ".........#.",
        "...........",
    });
    // fill -> solid 5x5 block at (1,1); largest -> the speck at (9,9) drops;
    // k = 100 makes R = floor(100 * 4 * sqrt(2) / 512) = 1, a plus-stamp dilation.
    BinaryMask block(11, 11);
    for (int r = 1; r <= 5; ++r)
        for (int c = 1; c <= 5; ++c)
            block.at(r, c) = 1;
    BinaryMask expect(11, 11);
    for (int r = 1; r <= 5; ++r)
        for (int c = 1; c <= 5; ++c) {
            expect.at(r, c) = 1;
            expect.at(r - 1, c) = 1;
            expect.at(r + 1, c) = 1;
            expect.at(r, c - 1) = 1;
            expect.at(r, c + 1) = 1;
        }
    CHECK(postprocess(input, 7.0) == block);
    CHECK(postprocess(input, 100.0) == expect);
}
