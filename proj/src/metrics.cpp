#include "lesionfuse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lesionfuse/error.hpp"

namespace lesionfuse {

namespace {

constexpr int kSamplesPerSpan = 64;

// One piece of the closed uniform quadratic B-spline, controlled by three
// consecutive points of the cyclic control polygon.
PointF spline_point(const PointF& a, const PointF& b, const PointF& c, double t) {
    double w0 = 0.5 * (1.0 - t) * (1.0 - t);
    double w1 = 0.5 * (-2.0 * t * t + 2.0 * t + 1.0);
    double w2 = 0.5 * t * t;
    return {w0 * a.x + w1 * b.x + w2 * c.x, w0 * a.y + w1 * b.y + w2 * c.y};
}

double polygon_area2(const std::vector<PointF>& pts) {
    double a = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const PointF& p = pts[i];
        const PointF& q = pts[(i + 1) % pts.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return a;
}

std::vector<PointF> flatten_spline(const ManualBorder& border, int samples_per_span) {
    const auto& cp = border.control_points;
    const std::size_t n = cp.size();
    std::vector<PointF> poly;
    poly.reserve(n * samples_per_span);
    for (std::size_t j = 0; j < n; ++j) {
        const PointF& a = cp[j];
        const PointF& b = cp[(j + 1) % n];
        const PointF& c = cp[(j + 2) % n];
        for (int s = 0; s < samples_per_span; ++s)
            poly.push_back(spline_point(a, b, c, static_cast<double>(s) / samples_per_span));
    }
    return poly;
}

// Even-odd scanline fill at pixel centers (x = column, y = row), plus the
// sample points themselves rounded onto the grid.
BinaryMask fill_polygon(const std::vector<PointF>& poly, int width, int height) {
    BinaryMask mask(width, height);
    std::vector<double> xs;
    for (int m = 0; m < height; ++m) {
        const double y = static_cast<double>(m);
        xs.clear();
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const PointF& p = poly[i];
            const PointF& q = poly[(i + 1) % poly.size()];
            if ((p.y <= y && y < q.y) || (q.y <= y && y < p.y))
                xs.push_back(p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y));
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
            int n0 = std::max(0, static_cast<int>(std::ceil(xs[i])));
            int n1 = std::min(width - 1, static_cast<int>(std::floor(xs[i + 1])));
            for (int n = n0; n <= n1; ++n)
                mask.at(m, n) = 1;
        }
    }
    for (const PointF& p : poly) {
        int n = static_cast<int>(std::lround(p.x));
        int m = static_cast<int>(std::lround(p.y));
        if (m >= 0 && m < height && n >= 0 && n < width)
            mask.at(m, n) = 1;
    }
    return mask;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

void append_stats(std::vector<ClassStats>& out, const std::string& label,
                  const std::vector<double>& values) {
    if (values.empty())
        return;
    ClassStats s;
    s.label = label;
    s.n = values.size();
    double sum = 0.0;
    for (double v : values)
        sum += v;
    s.mu = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mu) * (v - s.mu);
        s.sigma = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    out.push_back(std::move(s));
}

}  // namespace

std::string_view lesion_class_name(LesionClass c) {
    return c == LesionClass::Benign ? "benign" : "melanoma";
}

std::optional<LesionClass> lesion_class_from_name(std::string_view name) {
    if (name == "benign")
        return LesionClass::Benign;
    if (name == "melanoma")
        return LesionClass::Melanoma;
    return std::nullopt;
}

ManualBorder read_border_points(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError(path + ": cannot open");
    ManualBorder border;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty())
            continue;
        std::istringstream ls(t);
        PointF p;
        std::string rest;
        if (!(ls >> p.x >> p.y) || (ls >> rest && !rest.empty()))
            throw IoError(path + ":" + std::to_string(lineno) + ": expected \"x y\"");
        border.control_points.push_back(p);
    }
    if (border.control_points.size() < 3)
        throw IoError(path + ": a manual border needs at least 3 control points");
    return border;
}

BinaryMask rasterize_border(const ManualBorder& border, int width, int height) {
    if (border.control_points.size() < 3)
        throw DegenerateBorder("a manual border needs at least 3 control points");
    if (polygon_area2(border.control_points) == 0.0)
        throw DegenerateBorder("control polygon has zero area");
    return fill_polygon(flatten_spline(border, kSamplesPerSpan), width, height);
}

double xor_error(const BinaryMask& automatic, const BinaryMask& manual) {
    if (!automatic.same_size(manual))
        throw DimensionMismatch("automatic and manual masks differ in size");
    std::size_t manual_area = manual.foreground_count();
    if (manual_area == 0)
        throw EmptyManualBorder("manual border mask has no foreground");
    std::size_t disagree = 0;
    for (std::size_t i = 0; i < manual.labels.size(); ++i)
        disagree += automatic.labels[i] != manual.labels[i];
    return static_cast<double>(disagree) / static_cast<double>(manual_area);
}

EvalReport aggregate(const std::vector<EvalRow>& rows) {
    if (rows.empty())
        throw std::invalid_argument("no evaluation rows to aggregate");
    EvalReport report;
    report.per_image = rows;
    std::vector<double> benign, melanoma, all;
    for (const EvalRow& r : rows) {
        if (!r.error.empty())
            continue;
        (r.cls == LesionClass::Benign ? benign : melanoma).push_back(r.epsilon);
        all.push_back(r.epsilon);
    }
    append_stats(report.aggregates, "benign", benign);
    append_stats(report.aggregates, "melanoma", melanoma);
    append_stats(report.aggregates, "all", all);
    return report;
}

void write_report(std::ostream& out, const EvalReport& report) {
    char buf[64];
    out << "image,class,epsilon_percent,error\n";
    for (const EvalRow& r : report.per_image) {
        out << r.image << ',' << lesion_class_name(r.cls) << ',';
        if (r.error.empty()) {
            std::snprintf(buf, sizeof buf, "%.4f", r.epsilon * 100.0);
            out << buf;
        }
        out << ',' << r.error << '\n';
    }
    out << "class,mu,sigma,n\n";
    for (const ClassStats& s : report.aggregates) {
        std::snprintf(buf, sizeof buf, "%.4f,%.4f", s.mu * 100.0, s.sigma * 100.0);
        out << s.label << ',' << buf << ',' << s.n << '\n';
    }
}

std::vector<ManifestRow> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError(path + ": cannot open");
    std::vector<ManifestRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty())
            continue;
        if (lineno == 1 && t.rfind("image_path", 0) == 0)
            continue;  // header
        std::istringstream ls(t);
        std::string image, truth, cls;
        if (!std::getline(ls, image, ',') || !std::getline(ls, truth, ',') ||
            !std::getline(ls, cls))
            throw IoError(path + ":" + std::to_string(lineno) +
                          ": expected \"image_path,truth_path,class\"");
        ManifestRow row;
        row.image_path = trim(image);
        row.truth_path = trim(truth);
        auto parsed = lesion_class_from_name(trim(cls));
        if (!parsed)
            throw IoError(path + ":" + std::to_string(lineno) + ": class must be benign or melanoma");
        row.cls = *parsed;
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw IoError(path + ": empty manifest");
    return rows;
}

}  // namespace lesionfuse
