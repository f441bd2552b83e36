#pragma once

#include <stdexcept>
#include <string>

namespace lesionfuse {

// Unreadable, unwritable, unsupported or corrupt image/data file.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Fewer than two populated gray levels: no threshold splits the histogram.
struct DegenerateHistogram : std::runtime_error {
    explicit DegenerateHistogram(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

// No foreground pixels where a lesion object is required.
struct EmptyMask : std::runtime_error {
    explicit EmptyMask(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyManualBorder : std::runtime_error {
    explicit EmptyManualBorder(const std::string& msg) : std::runtime_error(msg) {}
};

// Zero-area (collinear) control polygon.
struct DegenerateBorder : std::runtime_error {
    explicit DegenerateBorder(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lesionfuse
