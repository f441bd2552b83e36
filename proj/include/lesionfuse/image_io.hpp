#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lesionfuse/image.hpp"

namespace lesionfuse {

/// Reads PNG (8-bit RGB or gray), PPM (P6) or PGM (P5), maxval 255.
/// Gray inputs are lifted to RGB with equal channels. 16-bit data is rejected.
ColorImage read_image(const std::string& path);

/// Reads a PGM (P5) or 8-bit gray PNG mask; nonzero pixels become foreground.
BinaryMask read_mask(const std::string& path);

/// Writes a mask as PGM (P5, 0 = background, 255 = foreground) or, when the
/// path ends in .png, as 8-bit gray PNG with the same values.
void write_mask(const std::string& path, const BinaryMask& mask);

/// Writes the image as RGB PNG with the 1-pixel boundary of each mask drawn in
/// its color. Boundary = foreground pixel with at least one 4-neighbor that is
/// background.
void write_overlay(const std::string& path, const ColorImage& img,
                   const std::vector<std::pair<BinaryMask, Rgb>>& contours);

}  // namespace lesionfuse
