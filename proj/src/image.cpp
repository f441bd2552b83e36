#include "lesionfuse/image.hpp"

#include <algorithm>

namespace lesionfuse {

std::size_t BinaryMask::foreground_count() const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

GrayImage extract_channel(const ColorImage& img, Channel channel) {
    GrayImage out(img.width, img.height);
    int offset = 2;
    if (channel == Channel::Red)
        offset = 0;
    else if (channel == Channel::Green)
        offset = 1;
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i)
        out.pixels[i] = img.pixels[i * 3 + offset];
    return out;
}

Histogram histogram(const GrayImage& img) {
    Histogram h;
    for (std::uint8_t v : img.pixels)
        ++h.counts[v];
    h.total = img.pixel_count();
    return h;
}

}  // namespace lesionfuse
