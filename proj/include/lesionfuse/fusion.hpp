#pragma once

#include <array>
#include <vector>

#include "lesionfuse/image.hpp"
#include "lesionfuse/threshold.hpp"

namespace lesionfuse {

/// Markov random field fusion of an ensemble of thresholded masks, after
/// Melgani's threshold fusion scheme. The neighborhood system is a fixed
/// 3x3 square. Defaults reproduce the non-iterative operating point
/// (initialization only, gamma = 0.1).
struct FusionConfig {
    double gamma = 0.1;          // weight decay per gray level, > 0
    double beta_sp = 1.0;        // spatial term weight, used only when iterations > 0
    int iterations = 0;          // K_max spatial sweeps
    double convergence_fraction = 0.001;  // early stop on changed-label fraction
};

/// Precalculated weights: per-method reliability beta_i = exp(-gamma*|T_bar - T_i|)
/// and per-gray-level confidence alpha_i[g] = 1 - exp(-gamma*|g - T_i|).
struct FusionWeights {
    double t_bar = 0.0;  // mean ensemble threshold
    std::vector<double> beta;
    std::vector<std::array<double, kGrayLevels>> alpha;
};

FusionWeights compute_weights(const Ensemble& ensemble, const FusionConfig& cfg);

/// Inter-image energy of assigning `label` at (m, n): the alpha-weighted,
/// beta-weighted count of ensemble decisions in the clipped 3x3 window
/// (center included) that agree with the label, negated.
double inter_image_energy(int label, int m, int n, const Ensemble& ensemble,
                          const FusionWeights& weights, const GrayImage& img);

/// Spatial energy of assigning `label` at (m, n): minus the number of
/// 8-neighbors (clipped window, center excluded) currently holding that label.
double spatial_energy(int label, int m, int n, const BinaryMask& current);

/// Per-pixel local energy minimization. Initialization minimizes the
/// inter-image term alone (ties go to label 1), then `iterations` synchronous
/// sweeps add beta_sp times the spatial term, each computed against the
/// previous sweep's mask, stopping early once the changed-label fraction
/// drops below convergence_fraction.
BinaryMask fuse(const GrayImage& img, const Ensemble& ensemble, const FusionConfig& cfg = {});

}  // namespace lesionfuse
