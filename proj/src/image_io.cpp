#include "lesionfuse/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include "lesionfuse/error.hpp"

namespace lesionfuse {

namespace {

// ---------------------------------------------------------------- PNM

// Reads the next header token, skipping whitespace and '#' comments.
std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c))
            continue;
        tok.push_back(static_cast<char>(c));
        while ((c = in.get()) != EOF && !std::isspace(c) && c != '#')
            tok.push_back(static_cast<char>(c));
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
        }
        return tok;
    }
    throw IoError("truncated PNM header");
}

int pnm_int(std::istream& in) {
    std::string tok = pnm_token(in);
    for (char ch : tok)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw IoError("malformed PNM header token '" + tok + "'");
    return std::stoi(tok);
}

struct PnmHeader {
    int channels = 0;  // 1 for P5, 3 for P6
    int width = 0;
    int height = 0;
};

PnmHeader read_pnm_header(std::istream& in, const std::string& path) {
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
        throw IoError(path + ": not a binary PGM/PPM file");
    PnmHeader h;
    h.channels = magic[1] == '5' ? 1 : 3;
    h.width = pnm_int(in);
    h.height = pnm_int(in);
    int maxval = pnm_int(in);
    if (h.width < 1 || h.height < 1)
        throw IoError(path + ": invalid PNM dimensions");
    if (maxval != 255)
        throw IoError(path + ": unsupported PNM maxval " + std::to_string(maxval) +
                      " (only 8-bit, maxval 255, is accepted)");
    // the single whitespace byte separating header from raster was consumed by pnm_int
    return h;
}

ColorImage read_pnm(std::ifstream& in, const std::string& path) {
    PnmHeader h = read_pnm_header(in, path);
    std::vector<std::uint8_t> raw(static_cast<std::size_t>(h.width) * h.height * h.channels);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw IoError(path + ": truncated PNM raster");
    ColorImage img(h.width, h.height);
    if (h.channels == 3) {
        img.pixels = std::move(raw);
    } else {
        for (std::size_t i = 0; i < raw.size(); ++i)
            img.pixels[i * 3] = img.pixels[i * 3 + 1] = img.pixels[i * 3 + 2] = raw[i];
    }
    return img;
}

void write_pgm(const std::string& path, const std::vector<std::uint8_t>& bytes, int width,
               int height) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError(path + ": cannot open for writing");
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError(path + ": write failed");
}

// ---------------------------------------------------------------- PNG

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f)
            std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() {
        if (png)
            png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() {
        if (png)
            png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

bool has_png_signature(std::FILE* f) {
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, f) != 8) {
        std::rewind(f);
        return false;
    }
    std::rewind(f);
    return png_sig_cmp(sig, 0, 8) == 0;
}

// Decodes any 8-bit PNG variant to interleaved RGB rows.
ColorImage read_png(std::FILE* f, const std::string& path) {
    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png)
        throw IoError(path + ": libpng init failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info)
        throw IoError(path + ": libpng init failed");
    if (setjmp(png_jmpbuf(r.png)))
        throw IoError(path + ": corrupt PNG");

    png_init_io(r.png, f);
    png_read_info(r.png, r.info);

    png_uint_32 w = png_get_image_width(r.png, r.info);
    png_uint_32 h = png_get_image_height(r.png, r.info);
    int bit_depth = png_get_bit_depth(r.png, r.info);
    int color_type = png_get_color_type(r.png, r.info);

    if (bit_depth == 16)
        throw IoError(path + ": 16-bit PNG is not supported (8-bit only)");
    if (w < 1 || h < 1)
        throw IoError(path + ": invalid PNG dimensions");

    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(r.png);
    if (png_get_valid(r.png, r.info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(r.png);
    png_set_strip_alpha(r.png);
    png_set_interlace_handling(r.png);
    png_read_update_info(r.png, r.info);

    if (png_get_channels(r.png, r.info) != 3 || png_get_bit_depth(r.png, r.info) != 8)
        throw IoError(path + ": unsupported PNG layout");

    ColorImage img(static_cast<int>(w), static_cast<int>(h));
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y)
        rows[y] = img.pixels.data() + static_cast<std::size_t>(y) * w * 3;
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);
    return img;
}

void write_png(const std::string& path, const std::uint8_t* data, int width, int height,
               int channels) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f)
        throw IoError(path + ": cannot open for writing");
    PngWriter w;
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!w.png)
        throw IoError(path + ": libpng init failed");
    w.info = png_create_info_struct(w.png);
    if (!w.info)
        throw IoError(path + ": libpng init failed");
    if (setjmp(png_jmpbuf(w.png)))
        throw IoError(path + ": PNG write failed");

    png_init_io(w.png, f.get());
    png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 8, channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = const_cast<png_bytep>(data + static_cast<std::size_t>(y) * width * channels);
    png_write_image(w.png, rows.data());
    png_write_end(w.png, nullptr);
}

bool ends_with_png(const std::string& path) {
    if (path.size() < 4)
        return false;
    std::string ext = path.substr(path.size() - 4);
    for (char& c : ext)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".png";
}

}  // namespace

ColorImage read_image(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f)
        throw IoError(path + ": cannot open");
    if (has_png_signature(f.get()))
        return read_png(f.get(), path);
    f.reset();
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path + ": cannot open");
    return read_pnm(in, path);
}

BinaryMask read_mask(const std::string& path) {
    ColorImage img = read_image(path);
    BinaryMask mask(img.width, img.height);
    for (std::size_t i = 0; i < mask.labels.size(); ++i)
        mask.labels[i] = img.pixels[i * 3] != 0 ? 1 : 0;
    return mask;
}

void write_mask(const std::string& path, const BinaryMask& mask) {
    std::vector<std::uint8_t> bytes(mask.labels.size());
    for (std::size_t i = 0; i < bytes.size(); ++i)
        bytes[i] = mask.labels[i] ? 255 : 0;
    if (ends_with_png(path))
        write_png(path, bytes.data(), mask.width, mask.height, 1);
    else
        write_pgm(path, bytes, mask.width, mask.height);
}

void write_overlay(const std::string& path, const ColorImage& img,
                   const std::vector<std::pair<BinaryMask, Rgb>>& contours) {
    for (const auto& [mask, color] : contours) {
        (void)color;
        if (mask.width != img.width || mask.height != img.height)
            throw DimensionMismatch("overlay mask dimensions do not match the image");
    }
    ColorImage out = img;
    for (const auto& [mask, color] : contours) {
        for (int m = 0; m < mask.height; ++m) {
            for (int n = 0; n < mask.width; ++n) {
                if (!mask.at(m, n))
                    continue;
                bool boundary = (m > 0 && !mask.at(m - 1, n)) ||
                                (m + 1 < mask.height && !mask.at(m + 1, n)) ||
                                (n > 0 && !mask.at(m, n - 1)) ||
                                (n + 1 < mask.width && !mask.at(m, n + 1));
                if (boundary)
                    out.set(m, n, color);
            }
        }
    }
    write_png(path, out.pixels.data(), out.width, out.height, 3);
}

}  // namespace lesionfuse
