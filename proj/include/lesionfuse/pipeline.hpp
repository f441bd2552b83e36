#pragma once

#include <vector>

#include "lesionfuse/fusion.hpp"
#include "lesionfuse/image.hpp"
#include "lesionfuse/threshold.hpp"

namespace lesionfuse {

/// Defaults reproduce the reference operating point: blue channel, all four
/// thresholding methods, gamma = 0.1, no spatial iterations, expansion k = 7.
struct PipelineOptions {
    Channel channel = Channel::Blue;
    std::vector<Method> methods = all_methods();
    FusionConfig fusion;
    double expand_k = 7.0;
    bool expand = true;
    bool dark_object = true;
};

struct PipelineResult {
    BinaryMask mask;  // final postprocessed border mask
    std::vector<ThresholdResult> thresholds;
    double elapsed_ms = 0.0;  // channel extraction through postprocessing
};

/// Full border detection: channel extraction, threshold ensemble, MRF fusion,
/// hole filling, largest-component selection and calibrated dilation.
PipelineResult detect_border(const ColorImage& img, const PipelineOptions& opts = {});

}  // namespace lesionfuse
