#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lesionfuse {

inline constexpr int kGrayLevels = 256;

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;

    bool operator==(const Rgb&) const = default;
};

enum class Channel { Red, Green, Blue };

/// 8-bit RGB raster, row-major, channels interleaved.
struct ColorImage {
    int width = 0;   // columns (N)
    int height = 0;  // rows (M)
    std::vector<std::uint8_t> pixels;  // size 3 * width * height

    ColorImage() = default;
    ColorImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::size_t index(int m, int n) const { return (static_cast<std::size_t>(m) * width + n) * 3; }
    Rgb at(int m, int n) const {
        std::size_t i = index(m, n);
        return {pixels[i], pixels[i + 1], pixels[i + 2]};
    }
    void set(int m, int n, Rgb c) {
        std::size_t i = index(m, n);
        pixels[i] = c.r;
        pixels[i + 1] = c.g;
        pixels[i + 2] = c.b;
    }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

/// Single-channel M x N raster with 256 gray levels.
struct GrayImage {
    static constexpr int levels = kGrayLevels;  // L

    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, (m, n) = row, column

    GrayImage() = default;
    GrayImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0) {}

    std::uint8_t at(int m, int n) const { return pixels[static_cast<std::size_t>(m) * width + n]; }
    std::uint8_t& at(int m, int n) { return pixels[static_cast<std::size_t>(m) * width + n]; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

/// Binary lesion/background labeling: 1 = lesion (foreground), 0 = background skin.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> labels;  // row-major, values in {0, 1}

    BinaryMask() = default;
    BinaryMask(int w, int h) : width(w), height(h), labels(static_cast<std::size_t>(w) * h, 0) {}

    std::uint8_t at(int m, int n) const { return labels[static_cast<std::size_t>(m) * width + n]; }
    std::uint8_t& at(int m, int n) { return labels[static_cast<std::size_t>(m) * width + n]; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    std::size_t foreground_count() const;
    bool same_size(const BinaryMask& other) const {
        return width == other.width && height == other.height;
    }

    bool operator==(const BinaryMask&) const = default;
};

struct Histogram {
    std::array<std::uint64_t, kGrayLevels> counts{};
    std::uint64_t total = 0;
};

GrayImage extract_channel(const ColorImage& img, Channel channel);

Histogram histogram(const GrayImage& img);

}  // namespace lesionfuse
