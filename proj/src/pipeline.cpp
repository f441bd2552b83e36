#include "lesionfuse/pipeline.hpp"

#include <chrono>
#include <utility>

#include "lesionfuse/morphology.hpp"

namespace lesionfuse {

PipelineResult detect_border(const ColorImage& img, const PipelineOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    GrayImage gray = extract_channel(img, opts.channel);
    Ensemble ensemble = run_ensemble(gray, opts.methods, opts.dark_object);
    BinaryMask fused = fuse(gray, ensemble, opts.fusion);
    PipelineResult result;
    if (opts.expand) {
        result.mask = postprocess(fused, opts.expand_k);
    } else {
        result.mask = largest_component(fill_holes(fused));
    }
    auto stop = std::chrono::steady_clock::now();
    result.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    for (ThresholdResult& r : ensemble.results)
        result.thresholds.push_back(std::move(r));
    return result;
}

}  // namespace lesionfuse
