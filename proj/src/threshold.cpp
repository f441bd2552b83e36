#include "lesionfuse/threshold.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lesionfuse/error.hpp"

namespace lesionfuse {

namespace {

constexpr int kMaxT = kGrayLevels - 2;  // candidate thresholds live in [0, L-2]
const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Exact integer prefix sums over the histogram; all criteria derive their
// population masses, means and variances from these.
struct Prefix {
    std::uint64_t count[kGrayLevels];
    std::uint64_t gsum[kGrayLevels];   // sum of g * counts[g]
    std::uint64_t g2sum[kGrayLevels];  // sum of g^2 * counts[g]

    explicit Prefix(const Histogram& h) {
        std::uint64_t c = 0, s = 0, s2 = 0;
        for (int g = 0; g < kGrayLevels; ++g) {
            c += h.counts[g];
            s += static_cast<std::uint64_t>(g) * h.counts[g];
            s2 += static_cast<std::uint64_t>(g) * g * h.counts[g];
            count[g] = c;
            gsum[g] = s;
            g2sum[g] = s2;
        }
    }

    bool candidate(const Histogram& h, int t) const {
        return count[t] > 0 && count[t] < h.total;
    }
};

void require_candidates(const Histogram& h, const Prefix& p) {
    for (int t = 0; t <= kMaxT; ++t)
        if (p.candidate(h, t))
            return;
    throw DegenerateHistogram("constant image: no threshold splits the histogram");
}

// Scans candidates in ascending T; strict improvement keeps the smallest T on ties.
template <typename Criterion>
ThresholdResult scan(Method method, const Histogram& h, bool maximize, Criterion&& crit) {
    Prefix p(h);
    require_candidates(h, p);
    ThresholdResult r;
    r.method = method;
    r.criterion_values.assign(kMaxT + 1, kNaN);
    double best = maximize ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    int best_t = -1;
    for (int t = 0; t <= kMaxT; ++t) {
        if (!p.candidate(h, t))
            continue;
        double v = crit(p, t);
        r.criterion_values[t] = v;
        if ((maximize && v > best) || (!maximize && v < best)) {
            best = v;
            best_t = t;
        }
    }
    r.threshold = best_t;
    return r;
}

double xlogx(double x) {
    return x > 0.0 ? x * std::log(x) : 0.0;
}

// Shannon entropy of a membership value; S(0) = S(1) = 0.
double fuzzy_entropy(double mu) {
    if (mu <= 0.0 || mu >= 1.0)
        return 0.0;
    return -mu * std::log(mu) - (1.0 - mu) * std::log(1.0 - mu);
}

}  // namespace

std::string_view method_name(Method m) {
    switch (m) {
        case Method::HuangWang: return "huang_wang";
        case Method::Kapur: return "kapur";
        case Method::Kittler: return "kittler";
        case Method::Otsu: return "otsu";
    }
    return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
    for (Method m : all_methods())
        if (name == method_name(m))
            return m;
    return std::nullopt;
}

const std::vector<Method>& all_methods() {
    static const std::vector<Method> methods = {Method::HuangWang, Method::Kapur,
                                                Method::Kittler, Method::Otsu};
    return methods;
}

ThresholdResult otsu(const Histogram& h) {
    const double total = static_cast<double>(h.total);
    return scan(Method::Otsu, h, /*maximize=*/true, [&](const Prefix& p, int t) {
        double p0 = static_cast<double>(p.count[t]) / total;
        double p1 = 1.0 - p0;
        double mu0 = static_cast<double>(p.gsum[t]) / static_cast<double>(p.count[t]);
        double mu1 = static_cast<double>(p.gsum[kGrayLevels - 1] - p.gsum[t]) /
                     static_cast<double>(h.total - p.count[t]);
        double d = mu0 - mu1;
        return p0 * p1 * d * d;
    });
}

ThresholdResult kapur(const Histogram& h) {
    // Prefix sums of p*ln(p); zero-probability levels contribute nothing.
    const double total = static_cast<double>(h.total);
    std::vector<double> plogp(kGrayLevels);
    double acc = 0.0;
    for (int g = 0; g < kGrayLevels; ++g) {
        acc += xlogx(static_cast<double>(h.counts[g]) / total);
        plogp[g] = acc;
    }
    const double s_all = plogp[kGrayLevels - 1];
    return scan(Method::Kapur, h, /*maximize=*/true, [&](const Prefix& p, int t) {
        double p0 = static_cast<double>(p.count[t]) / total;
        double p1 = 1.0 - p0;
        // H0 + H1 with H0 = ln(P0) - S0/P0, the expanded form of
        // -sum((p/P0) * ln(p/P0)) over the low population.
        double h0 = std::log(p0) - plogp[t] / p0;
        double h1 = std::log(p1) - (s_all - plogp[t]) / p1;
        return h0 + h1;
    });
}

ThresholdResult kittler(const Histogram& h) {
    const double total = static_cast<double>(h.total);
    const double var_floor = 1.0 / 12.0;
    return scan(Method::Kittler, h, /*maximize=*/false, [&](const Prefix& p, int t) {
        double n1 = static_cast<double>(p.count[t]);
        double n2 = static_cast<double>(h.total - p.count[t]);
        double p1 = n1 / total;
        double p2 = n2 / total;
        double mu1 = static_cast<double>(p.gsum[t]) / n1;
        double mu2 = static_cast<double>(p.gsum[kGrayLevels - 1] - p.gsum[t]) / n2;
        double var1 = static_cast<double>(p.g2sum[t]) / n1 - mu1 * mu1;
        double var2 =
            static_cast<double>(p.g2sum[kGrayLevels - 1] - p.g2sum[t]) / n2 - mu2 * mu2;
        var1 = std::max(var1, var_floor);
        var2 = std::max(var2, var_floor);
        return 1.0 + 2.0 * (p1 * std::log(std::sqrt(var1)) + p2 * std::log(std::sqrt(var2))) -
               2.0 * (p1 * std::log(p1) + p2 * std::log(p2));
    });
}

ThresholdResult huang_wang(const Histogram& h) {
    int g_min = -1, g_max = -1;
    for (int g = 0; g < kGrayLevels; ++g) {
        if (h.counts[g]) {
            if (g_min < 0)
                g_min = g;
            g_max = g;
        }
    }
    const double c = static_cast<double>(g_max - g_min);  // populated range
    return scan(Method::HuangWang, h, /*maximize=*/false, [&](const Prefix& p, int t) {
        double mu0 = static_cast<double>(p.gsum[t]) / static_cast<double>(p.count[t]);
        double mu1 = static_cast<double>(p.gsum[kGrayLevels - 1] - p.gsum[t]) /
                     static_cast<double>(h.total - p.count[t]);
        double e = 0.0;
        for (int g = g_min; g <= g_max; ++g) {
            if (!h.counts[g])
                continue;
            double mu = g <= t ? mu0 : mu1;
            double membership = 1.0 / (1.0 + std::abs(g - mu) / c);
            e += fuzzy_entropy(membership) * static_cast<double>(h.counts[g]);
        }
        return e;
    });
}

ThresholdResult select_threshold(Method m, const Histogram& h) {
    switch (m) {
        case Method::HuangWang: return huang_wang(h);
        case Method::Kapur: return kapur(h);
        case Method::Kittler: return kittler(h);
        case Method::Otsu: return otsu(h);
    }
    throw std::invalid_argument("unknown thresholding method");
}

BinaryMask binarize(const GrayImage& img, int threshold, bool dark_object) {
    if (threshold < 0 || threshold > kMaxT)
        throw std::invalid_argument("threshold out of range [0, " + std::to_string(kMaxT) + "]");
    BinaryMask mask(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        bool low = img.pixels[i] <= threshold;
        mask.labels[i] = (low == dark_object) ? 1 : 0;
    }
    return mask;
}

Ensemble run_ensemble(const GrayImage& img, const std::vector<Method>& methods,
                      bool dark_object) {
    if (methods.empty())
        throw std::invalid_argument("ensemble needs at least one thresholding method");
    Histogram h = histogram(img);
    Ensemble e;
    e.results.reserve(methods.size());
    e.masks.reserve(methods.size());
    for (Method m : methods) {
        ThresholdResult r = select_threshold(m, h);
        e.masks.push_back(binarize(img, r.threshold, dark_object));
        e.results.push_back(std::move(r));
    }
    return e;
}

}  // namespace lesionfuse
