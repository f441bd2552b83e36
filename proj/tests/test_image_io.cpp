#include <doctest.h>

#include <fstream>

#include "lesionfuse/error.hpp"
#include "lesionfuse/image_io.hpp"
#include "support/tempdir.hpp"

using namespace lesionfuse;
using testutil::TempDir;

namespace {

BinaryMask checkerboard(int w, int h) {
    BinaryMask m(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            m.at(r, c) = (r + c) % 2;
    return m;
}

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("mask round-trips losslessly through PGM and PNG") {
    TempDir dir("io");
    BinaryMask mask = checkerboard(3, 3);
    for (const char* name : {"mask.pgm", "mask.png"}) {
        write_mask(dir.file(name), mask);
        CHECK(read_mask(dir.file(name)) == mask);
    }
}

TEST_CASE("overlay with an empty mask leaves the image untouched") {
    TempDir dir("io");
    ColorImage img(4, 3);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 4; ++n)
            img.set(m, n, {static_cast<std::uint8_t>(10 * m), static_cast<std::uint8_t>(20 * n),
                           200});
    write_overlay(dir.file("overlay.png"), img, {{BinaryMask(4, 3), Rgb{255, 0, 0}}});
    ColorImage back = read_image(dir.file("overlay.png"));
    CHECK(back.pixels == img.pixels);
}

TEST_CASE("overlay recolors exactly the 4-boundary of a solid square") {
    TempDir dir("io");
    ColorImage img(5, 5);
    for (auto& p : img.pixels)
        p = 100;
    BinaryMask mask(5, 5);
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n)
            mask.at(m, n) = 1;
    const Rgb red{255, 0, 0};
    write_overlay(dir.file("overlay.png"), img, {{mask, red}});
    ColorImage back = read_image(dir.file("overlay.png"));
    int recolored = 0;
    for (int m = 0; m < 5; ++m) {
        for (int n = 0; n < 5; ++n) {
            if (back.at(m, n) == red) {
                ++recolored;
                CHECK(mask.at(m, n) == 1);
                CHECK(!(m == 2 && n == 2));  // interior pixel stays
            }
        }
    }
    CHECK(recolored == 8);
    CHECK(back.at(2, 2) == Rgb{100, 100, 100});
}

TEST_CASE("overlay rejects mismatched mask dimensions") {
    TempDir dir("io");
    ColorImage img(4, 4);
    CHECK_THROWS_AS(write_overlay(dir.file("o.png"), img, {{BinaryMask(3, 3), Rgb{255, 0, 0}}}),
                    DimensionMismatch);
}

TEST_CASE("reads binary PPM with comments, lifts PGM gray to RGB") {
    TempDir dir("io");
    write_bytes(dir.file("tiny.ppm"),
                std::string("P6 # comment\n2 1\n255\n") + "\x01\x02\x03\x0a\x0b\x0c");
    ColorImage rgb = read_image(dir.file("tiny.ppm"));
    CHECK(rgb.width == 2);
    CHECK(rgb.height == 1);
    CHECK(rgb.at(0, 0) == Rgb{1, 2, 3});
    CHECK(rgb.at(0, 1) == Rgb{10, 11, 12});

    write_bytes(dir.file("tiny.pgm"), std::string("P5\n1 2\n255\n") + "\x40\x80");
    ColorImage gray = read_image(dir.file("tiny.pgm"));
    CHECK(gray.at(0, 0) == Rgb{0x40, 0x40, 0x40});
    CHECK(gray.at(1, 0) == Rgb{0x80, 0x80, 0x80});
}

TEST_CASE("rejects unsupported and corrupt inputs") {
    TempDir dir("io");

    write_bytes(dir.file("ascii.pgm"), "P2\n1 1\n255\n0\n");
    CHECK_THROWS_AS(read_image(dir.file("ascii.pgm")), IoError);

    write_bytes(dir.file("deep.pgm"), std::string("P5\n1 1\n65535\n") + "\x00\x00");
    CHECK_THROWS_AS(read_image(dir.file("deep.pgm")), IoError);  // 16-bit rejected

    write_bytes(dir.file("short.ppm"), "P6\n2 2\n255\nxx");
    CHECK_THROWS_AS(read_image(dir.file("short.ppm")), IoError);

    CHECK_THROWS_AS(read_image(dir.file("missing.png")), IoError);

    write_bytes(dir.file("bad.png"), "\x89PNG\r\n\x1a\nnot really a png");
    CHECK_THROWS_AS(read_image(dir.file("bad.png")), IoError);
}

TEST_CASE("PNG gray masks read back as equal RGB channels") {
    TempDir dir("io");
    BinaryMask mask = checkerboard(4, 2);
    write_mask(dir.file("m.png"), mask);
    ColorImage img = read_image(dir.file("m.png"));
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 4; ++n) {
            std::uint8_t v = mask.at(m, n) ? 255 : 0;
            CHECK(img.at(m, n) == Rgb{v, v, v});
        }
    }
}
