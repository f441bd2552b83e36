#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lesionfuse/image.hpp"

namespace lesionfuse {

struct PointF {
    double x = 0.0, y = 0.0;  // pixel coordinates: x = column, y = row
};

/// Closed manual border: at least 3 control points joined by a closed
/// second-order B-spline.
struct ManualBorder {
    std::vector<PointF> control_points;
};

enum class LesionClass { Benign, Melanoma };

std::string_view lesion_class_name(LesionClass c);
std::optional<LesionClass> lesion_class_from_name(std::string_view name);

/// Parses a ground-truth file: one "x y" pair per line, decimal coordinates.
ManualBorder read_border_points(const std::string& path);

/// Flattens the closed uniform quadratic B-spline through the control points
/// (64 samples per knot span) and fills the resulting polygon by even-odd
/// scanline; boundary samples are part of the foreground.
BinaryMask rasterize_border(const ManualBorder& border, int width, int height);

/// XOR error: disagreeing pixel count divided by the manual foreground area.
/// Returned as a fraction; reports render percent.
double xor_error(const BinaryMask& automatic, const BinaryMask& manual);

struct EvalRow {
    std::string image;
    LesionClass cls = LesionClass::Benign;
    double epsilon = 0.0;  // fraction; meaningful only when error is empty
    std::string error;     // non-empty if this image failed
};

struct ClassStats {
    std::string label;  // "benign", "melanoma" or "all"
    double mu = 0.0;     // mean epsilon, fraction
    double sigma = 0.0;  // sample standard deviation (n-1), 0 for a single sample
    std::size_t n = 0;
};

struct EvalReport {
    std::vector<EvalRow> per_image;
    std::vector<ClassStats> aggregates;  // benign, melanoma (when present), then all
};

/// Per-class and overall mean/sigma over the rows that carry no error.
EvalReport aggregate(const std::vector<EvalRow>& rows);

/// CSV report: per-image rows under "image,class,epsilon_percent,error", then
/// aggregate rows under "class,mu,sigma,n". Values are percentages with four
/// decimals.
void write_report(std::ostream& out, const EvalReport& report);

struct ManifestRow {
    std::string image_path;
    std::string truth_path;
    LesionClass cls = LesionClass::Benign;
};

/// Parses a manifest CSV with rows "image_path,truth_path,class"; a leading
/// header row is skipped. Relative paths are resolved against the manifest's
/// directory by the caller.
std::vector<ManifestRow> read_manifest(const std::string& path);

}  // namespace lesionfuse
