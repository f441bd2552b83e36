#pragma once

// Independent brute-force reference implementations used only by tests. Each
// evaluates its criterion or definition literally, with fresh per-candidate
// loops, and must stay decoupled from the library code paths it checks.

#include "lesionfuse/fusion.hpp"
#include "lesionfuse/image.hpp"
#include "lesionfuse/metrics.hpp"
#include "lesionfuse/threshold.hpp"

namespace lesionfuse::oracle {

// Exhaustive criterion scan over every candidate threshold; smallest T wins
// ties. Returns -1 when no candidate exists.
int brute_force_threshold(Method method, const Histogram& h);

// Per-pixel exhaustive evaluation of the fused label with no spatial term:
// both label energies computed straight from the weight definitions, ties to
// label 1.
BinaryMask brute_force_fusion_init(const GrayImage& img, const Ensemble& ensemble, double gamma);

// Double-loop Minkowski sum with the closed disk of the given radius.
BinaryMask brute_force_dilate(const BinaryMask& mask, int radius);

// Max pairwise distance over all foreground pixel pairs.
double brute_force_diameter(const BinaryMask& mask);

// Closed quadratic B-spline rasterization at an arbitrary sampling density,
// written independently of the library rasterizer.
BinaryMask dense_rasterize(const ManualBorder& border, int width, int height, int samples_per_span);

}  // namespace lesionfuse::oracle
