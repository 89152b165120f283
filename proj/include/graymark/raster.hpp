#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "graymark/errors.hpp"

namespace graymark {

// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}
    GrayImage(int w, int h, std::vector<std::uint8_t> px)
        : width(w), height(h), pixels(std::move(px)) {}

    std::size_t pixel_count() const { return pixels.size(); }
    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

    friend bool operator==(const GrayImage& a, const GrayImage& b) = default;
};

// Rec.601 luma, rounded half away from zero.
inline std::uint8_t to_gray(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    long v = std::lround(y);
    if (v < 0) v = 0;
    if (v > 255) v = 255;
    return static_cast<std::uint8_t>(v);
}

namespace detail {

GrayImage decode_png(const std::vector<std::uint8_t>& file); // detail/png.hpp

inline bool is_pnm_space(int c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

// Reads one PGM header token, skipping whitespace and '#' comments.
inline unsigned read_pnm_number(std::istream& in) {
    int c = in.get();
    while (c != EOF && (is_pnm_space(c) || c == '#')) {
        if (c == '#')
            while (c != EOF && c != '\n') c = in.get();
        c = in.get();
    }
    if (c == EOF || c < '0' || c > '9')
        throw FormatError("malformed PGM header");
    unsigned long value = 0;
    while (c >= '0' && c <= '9') {
        value = value * 10 + static_cast<unsigned>(c - '0');
        if (value > 1000000000UL)
            throw FormatError("PGM header value out of range");
        c = in.get();
    }
    if (c != EOF)
        in.unget(); // the single whitespace after the token is consumed by the caller
    return static_cast<unsigned>(value);
}

inline GrayImage decode_pgm(std::istream& in) {
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5')
        throw FormatError("not a binary PGM (P5) file");
    const unsigned width = read_pnm_number(in);
    const unsigned height = read_pnm_number(in);
    const unsigned maxval = read_pnm_number(in);
    if (width == 0 || height == 0)
        throw FormatError("PGM with zero dimension");
    if (static_cast<std::uint64_t>(width) * height > (1ULL << 28))
        throw FormatError("PGM dimensions unreasonably large");
    if (maxval != 255)
        throw FormatError("only maxval 255 PGM is supported");
    const int sep = in.get();
    if (sep == EOF || !is_pnm_space(sep))
        throw FormatError("missing whitespace after PGM maxval");

    GrayImage img(static_cast<int>(width), static_cast<int>(height));
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.pixels.size())
        throw FormatError("truncated PGM pixel data");
    return img;
}

} // namespace detail

// Loads a binary PGM (P5, maxval 255) or an 8-bit gray/RGB PNG.
// RGB data is converted through to_gray.
inline GrayImage load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open image file: " + path);
    const int first = in.peek();
    if (first == 'P')
        return detail::decode_pgm(in);
    if (first == 0x89) {
        std::vector<std::uint8_t> file((std::istreambuf_iterator<char>(in)),
                                       std::istreambuf_iterator<char>());
        return detail::decode_png(file);
    }
    throw FormatError("unsupported image format: " + path);
}

// Writes binary PGM P5 with maxval 255. The exact byte layout is
// "P5\n<w> <h>\n255\n" followed by row-major pixels; load_image reads it
// back bit-exactly.
inline void save_image(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out)
        throw IoError("write failed: " + path);
}

// Nearest-neighbour resize; source index = floor((dst + 0.5) * src / dst).
inline GrayImage resize_nn(const GrayImage& img, int new_width, int new_height) {
    if (new_width < 1 || new_height < 1)
        throw ParamError("resize target must be at least 1x1");
    if (new_width == img.width && new_height == img.height)
        return img;

    GrayImage out(new_width, new_height);
    std::vector<int> col_map(static_cast<std::size_t>(new_width));
    for (int x = 0; x < new_width; ++x) {
        int sx = static_cast<int>(std::floor((x + 0.5) * img.width / new_width));
        col_map[x] = sx < img.width ? sx : img.width - 1;
    }
    for (int y = 0; y < new_height; ++y) {
        int sy = static_cast<int>(std::floor((y + 0.5) * img.height / new_height));
        if (sy >= img.height) sy = img.height - 1;
        for (int x = 0; x < new_width; ++x)
            out.at(x, y) = img.at(col_map[x], sy);
    }
    return out;
}

} // namespace graymark

#include "graymark/detail/png.hpp"
