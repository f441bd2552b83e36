#include "lesionfuse/morphology.hpp"

#include <algorithm>
#include <cmath>

#include "lesionfuse/error.hpp"

namespace lesionfuse {

namespace {

struct Point {
    int x, y;  // column, row
};

std::int64_t cross(const Point& o, const Point& a, const Point& b) {
    return static_cast<std::int64_t>(a.x - o.x) * (b.y - o.y) -
           static_cast<std::int64_t>(a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; collinear points are dropped.
std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2)
        return pts;
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

// Flood fill over `mask` pixels equal to `value`, 4- or 8-connected, from the
// given seeds; marks visited positions in `seen`. Returns the number of
// pixels popped (seeds included).
std::size_t flood(const BinaryMask& mask, std::uint8_t value, bool diagonal,
                  std::vector<std::size_t>& stack, std::vector<std::uint8_t>& seen) {
    const int w = mask.width, h = mask.height;
    std::size_t visited = 0;
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        ++visited;
        int m = static_cast<int>(i) / w;
        int n = static_cast<int>(i) % w;
        auto visit = [&](int p, int q) {
            if (p < 0 || p >= h || q < 0 || q >= w)
                return;
            std::size_t j = static_cast<std::size_t>(p) * w + q;
            if (!seen[j] && mask.labels[j] == value) {
                seen[j] = 1;
                stack.push_back(j);
            }
        };
        visit(m - 1, n);
        visit(m + 1, n);
        visit(m, n - 1);
        visit(m, n + 1);
        if (diagonal) {
            visit(m - 1, n - 1);
            visit(m - 1, n + 1);
            visit(m + 1, n - 1);
            visit(m + 1, n + 1);
        }
    }
    return visited;
}

}  // namespace

StructuringElement StructuringElement::disk(int radius) {
    StructuringElement se;
    se.radius = radius;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dy * dy + dx * dx <= radius * radius)
                se.offsets.emplace_back(dy, dx);
    return se;
}

BinaryMask fill_holes(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    std::vector<std::uint8_t> reachable(mask.pixel_count(), 0);
    std::vector<std::size_t> stack;
    auto seed = [&](int m, int n) {
        std::size_t i = static_cast<std::size_t>(m) * w + n;
        if (!reachable[i] && mask.labels[i] == 0) {
            reachable[i] = 1;
            stack.push_back(i);
        }
    };
    for (int n = 0; n < w; ++n) {
        seed(0, n);
        seed(h - 1, n);
    }
    for (int m = 0; m < h; ++m) {
        seed(m, 0);
        seed(m, w - 1);
    }
    flood(mask, 0, /*diagonal=*/true, stack, reachable);
    BinaryMask out(w, h);
    for (std::size_t i = 0; i < out.labels.size(); ++i)
        out.labels[i] = mask.labels[i] || !reachable[i] ? 1 : 0;
    return out;
}

BinaryMask largest_component(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    std::vector<std::uint8_t> seen(mask.pixel_count(), 0);
    std::vector<std::size_t> stack;
    std::size_t best_seed = 0, best_size = 0;
    bool found = false;
    for (std::size_t i = 0; i < mask.labels.size(); ++i) {
        if (!mask.labels[i] || seen[i])
            continue;
        seen[i] = 1;
        stack.push_back(i);
        std::size_t size = flood(mask, 1, /*diagonal=*/false, stack, seen);
        if (!found || size > best_size) {  // strict: first scan-order seed wins ties
            found = true;
            best_size = size;
            best_seed = i;
        }
    }
    if (!found)
        throw EmptyMask("no lesion detected (mask has no foreground)");
    BinaryMask out(w, h);
    std::fill(seen.begin(), seen.end(), 0);
    seen[best_seed] = 1;
    stack.clear();
    stack.push_back(best_seed);
    flood(mask, 1, /*diagonal=*/false, stack, seen);
    out.labels = seen;
    return out;
}

ComponentStats component_stats(const BinaryMask& mask) {
    std::vector<Point> pts;
    for (int m = 0; m < mask.height; ++m)
        for (int n = 0; n < mask.width; ++n)
            if (mask.at(m, n))
                pts.push_back({n, m});
    if (pts.empty())
        throw EmptyMask("no lesion detected (mask has no foreground)");
    ComponentStats s;
    s.pixel_count = static_cast<std::int64_t>(pts.size());
    s.min_row = s.max_row = pts.front().y;
    s.min_col = s.max_col = pts.front().x;
    for (const Point& p : pts) {
        s.min_row = std::min(s.min_row, p.y);
        s.max_row = std::max(s.max_row, p.y);
        s.min_col = std::min(s.min_col, p.x);
        s.max_col = std::max(s.max_col, p.x);
    }
    std::vector<Point> hull = convex_hull(std::move(pts));
    std::int64_t best = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        for (std::size_t j = i + 1; j < hull.size(); ++j) {
            std::int64_t dx = hull[i].x - hull[j].x;
            std::int64_t dy = hull[i].y - hull[j].y;
            best = std::max(best, dx * dx + dy * dy);
        }
    }
    s.diameter = std::sqrt(static_cast<double>(best));
    return s;
}

int dilation_radius(double diameter, double k, double width_ref) {
    return static_cast<int>(std::floor(k * diameter / width_ref));
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
    const int w = mask.width, h = mask.height;
    BinaryMask out(w, h);
    for (int m = 0; m < h; ++m) {
        for (int n = 0; n < w; ++n) {
            if (!mask.at(m, n))
                continue;
            for (const auto& [dy, dx] : se.offsets) {
                int p = m + dy, q = n + dx;
                if (p >= 0 && p < h && q >= 0 && q < w)
                    out.at(p, q) = 1;
            }
        }
    }
    return out;
}

BinaryMask postprocess(const BinaryMask& mask, double k) {
    BinaryMask object = largest_component(fill_holes(mask));
    ComponentStats stats = component_stats(object);
    int radius = dilation_radius(stats.diameter, k);
    if (radius <= 0)
        return object;
    return dilate(object, StructuringElement::disk(radius));
}

}  // namespace lesionfuse
