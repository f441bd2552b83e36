#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lesionfuse/image.hpp"

namespace lesionfuse {

/// Closed discrete disk: all offsets (dy, dx) with dy^2 + dx^2 <= radius^2.
struct StructuringElement {
    int radius = 0;
    std::vector<std::pair<int, int>> offsets;

    static StructuringElement disk(int radius);
};

struct ComponentStats {
    std::int64_t pixel_count = 0;
    double diameter = 0.0;  // max pairwise distance between pixel centers (Feret)
    int min_row = 0, min_col = 0, max_row = 0, max_col = 0;
};

/// Turns background pixels that cannot reach the image border into foreground.
/// Background connectivity is 8 (the dual of the 4-connected foreground), so
/// holes cannot leak through diagonal gaps in a ring.
BinaryMask fill_holes(const BinaryMask& mask);

/// Keeps only the 4-connected foreground component with the most pixels; ties
/// go to the component discovered first in row-major scan order.
BinaryMask largest_component(const BinaryMask& mask);

/// Area, bounding box and exact maximum Feret diameter of the foreground,
/// computed over convex hull vertices.
ComponentStats component_stats(const BinaryMask& mask);

/// R = floor(k * D / width_ref); the dilation is calibrated to the lesion
/// diameter relative to a 512-pixel reference width.
int dilation_radius(double diameter, double k, double width_ref = 512.0);

/// Minkowski sum with the structuring element, clipped at image borders.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);

/// fill_holes, then largest_component, then dilation by the disk of radius
/// dilation_radius(object diameter, k).
BinaryMask postprocess(const BinaryMask& mask, double k = 7.0);

}  // namespace lesionfuse
