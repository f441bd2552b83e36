#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lesionfuse/image.hpp"

namespace lesionfuse {

enum class Method { HuangWang, Kapur, Kittler, Otsu };

std::string_view method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

/// All four methods in their canonical order (the CLI default ensemble).
const std::vector<Method>& all_methods();

struct ThresholdResult {
    Method method;
    int threshold = 0;  // T, a candidate: both populations {g <= T} and {g > T} populated
    // Criterion value per candidate T in [0, levels-2]; NaN at non-candidates.
    std::vector<double> criterion_values;
};

/// The P thresholded decisions that feed the fusion step.
struct Ensemble {
    std::vector<ThresholdResult> results;  // input order
    std::vector<BinaryMask> masks;         // A_i, same order

    std::size_t size() const { return results.size(); }
};

// Every criterion scans the same candidate set (both populations non-empty)
// and breaks ties by the smallest T. A constant image has no candidate and
// raises DegenerateHistogram.

/// Otsu's clustering method: maximizes between-population variance.
ThresholdResult otsu(const Histogram& h);

/// Kapur et al.'s maximum entropy method.
ThresholdResult kapur(const Histogram& h);

/// Kittler & Illingworth's minimum error method. Population variances are
/// clamped below at 1/12 (quantization floor of unit-width bins) before logs.
ThresholdResult kittler(const Histogram& h);

/// Huang & Wang's fuzzy similarity method, Shannon entropy variant.
ThresholdResult huang_wang(const Histogram& h);

ThresholdResult select_threshold(Method m, const Histogram& h);

/// Label 1 iff pixel <= T (lesions are darker than the surrounding skin in the
/// blue channel). Pass dark_object = false to flip polarity.
BinaryMask binarize(const GrayImage& img, int threshold, bool dark_object = true);

Ensemble run_ensemble(const GrayImage& img, const std::vector<Method>& methods,
                      bool dark_object = true);

}  // namespace lesionfuse
