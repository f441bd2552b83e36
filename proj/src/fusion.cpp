#include "lesionfuse/fusion.hpp"

#include <cmath>
#include <stdexcept>

#include "lesionfuse/error.hpp"

namespace lesionfuse {

namespace {

struct Window {
    int m0, m1, n0, n1;  // inclusive bounds of the clipped 3x3 window
    Window(int m, int n, int height, int width)
        : m0(m > 0 ? m - 1 : 0),
          m1(m + 1 < height ? m + 1 : height - 1),
          n0(n > 0 ? n - 1 : 0),
          n1(n + 1 < width ? n + 1 : width - 1) {}
};

// Inter-image energies for both labels in one window pass. Accumulation order
// (methods outer, window row-major inner) matches inter_image_energy exactly.
void inter_energies(int m, int n, const Ensemble& ensemble, const FusionWeights& weights,
                    const GrayImage& img, double energy[2]) {
    Window w(m, n, img.height, img.width);
    energy[0] = energy[1] = 0.0;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const auto& alpha = weights.alpha[i];
        const BinaryMask& decision = ensemble.masks[i];
        double agree[2] = {0.0, 0.0};
        for (int p = w.m0; p <= w.m1; ++p)
            for (int q = w.n0; q <= w.n1; ++q)
                agree[decision.at(p, q)] += alpha[img.at(p, q)];
        energy[0] -= weights.beta[i] * agree[0];
        energy[1] -= weights.beta[i] * agree[1];
    }
}

}  // namespace

FusionWeights compute_weights(const Ensemble& ensemble, const FusionConfig& cfg) {
    const std::size_t p = ensemble.size();
    if (p == 0)
        throw std::invalid_argument("empty ensemble");
    FusionWeights w;
    double sum = 0.0;
    for (const ThresholdResult& r : ensemble.results)
        sum += static_cast<double>(r.threshold);
    w.t_bar = sum / static_cast<double>(p);
    w.beta.reserve(p);
    w.alpha.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
        int t = ensemble.results[i].threshold;
        w.beta.push_back(std::exp(-cfg.gamma * std::abs(w.t_bar - t)));
        for (int g = 0; g < kGrayLevels; ++g)
            w.alpha[i][g] = 1.0 - std::exp(-cfg.gamma * std::abs(g - t));
    }
    return w;
}

double inter_image_energy(int label, int m, int n, const Ensemble& ensemble,
                          const FusionWeights& weights, const GrayImage& img) {
    Window w(m, n, img.height, img.width);
    double energy = 0.0;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const auto& alpha = weights.alpha[i];
        const BinaryMask& decision = ensemble.masks[i];
        double agree = 0.0;
        for (int p = w.m0; p <= w.m1; ++p)
            for (int q = w.n0; q <= w.n1; ++q)
                if (decision.at(p, q) == label)
                    agree += alpha[img.at(p, q)];
        energy -= weights.beta[i] * agree;
    }
    return energy;
}

double spatial_energy(int label, int m, int n, const BinaryMask& current) {
    Window w(m, n, current.height, current.width);
    int agree = 0;
    for (int p = w.m0; p <= w.m1; ++p)
        for (int q = w.n0; q <= w.n1; ++q)
            if (!(p == m && q == n) && current.at(p, q) == label)
                ++agree;
    return -static_cast<double>(agree);
}

BinaryMask fuse(const GrayImage& img, const Ensemble& ensemble, const FusionConfig& cfg) {
    if (ensemble.size() == 0)
        throw std::invalid_argument("empty ensemble");
    for (const BinaryMask& mask : ensemble.masks)
        if (mask.width != img.width || mask.height != img.height)
            throw DimensionMismatch("ensemble mask dimensions do not match the image");

    const FusionWeights weights = compute_weights(ensemble, cfg);

    BinaryMask out(img.width, img.height);
    for (int m = 0; m < img.height; ++m) {
        for (int n = 0; n < img.width; ++n) {
            double e[2];
            inter_energies(m, n, ensemble, weights, img, e);
            out.at(m, n) = e[1] <= e[0] ? 1 : 0;  // ties go to the lesion label
        }
    }

    BinaryMask next(img.width, img.height);
    for (int k = 0; k < cfg.iterations; ++k) {
        std::size_t changed = 0;
        for (int m = 0; m < img.height; ++m) {
            for (int n = 0; n < img.width; ++n) {
                double e[2];
                inter_energies(m, n, ensemble, weights, img, e);
                e[0] += cfg.beta_sp * spatial_energy(0, m, n, out);
                e[1] += cfg.beta_sp * spatial_energy(1, m, n, out);
                std::uint8_t label = e[1] <= e[0] ? 1 : 0;
                next.at(m, n) = label;
                if (label != out.at(m, n))
                    ++changed;
            }
        }
        std::swap(out, next);
        if (static_cast<double>(changed) / static_cast<double>(out.pixel_count()) <
            cfg.convergence_fraction)
            break;
    }
    return out;
}

}  // namespace lesionfuse
