#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include <zlib.h>

#include "graymark/errors.hpp"

// Minimal PNG reader: 8-bit depth, grayscale or RGB, non-interlaced.
// Enough for standard test-image files; everything else is a FormatError.

namespace graymark {
namespace detail {

inline std::uint32_t read_be32(const std::uint8_t* p) {
    return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
           (static_cast<std::uint32_t>(p[2]) << 8) | p[3];
}

inline std::vector<std::uint8_t> zlib_inflate(const std::vector<std::uint8_t>& compressed,
                                              std::size_t expected_size) {
    std::vector<std::uint8_t> out(expected_size);
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK)
        throw FormatError("zlib init failed");
    zs.next_in = const_cast<Bytef*>(compressed.data());
    zs.avail_in = static_cast<uInt>(compressed.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || zs.total_out != expected_size)
        throw FormatError("PNG image data does not decompress to the expected size");
    return out;
}

inline std::uint8_t paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return static_cast<std::uint8_t>(a);
    if (pb <= pc) return static_cast<std::uint8_t>(b);
    return static_cast<std::uint8_t>(c);
}

inline GrayImage decode_png(const std::vector<std::uint8_t>& file) {
    static const std::uint8_t signature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    if (file.size() < 8 + 25 || !std::equal(signature, signature + 8, file.begin()))
        throw FormatError("not a PNG file");

    std::size_t pos = 8;
    int width = 0, height = 0, channels = 0;
    std::vector<std::uint8_t> idat;
    bool seen_ihdr = false, seen_iend = false;

    while (pos + 8 <= file.size() && !seen_iend) {
        const std::uint32_t length = read_be32(&file[pos]);
        if (pos + 12 + static_cast<std::size_t>(length) > file.size())
            throw FormatError("truncated PNG chunk");
        const std::uint8_t* type = &file[pos + 4];
        const std::uint8_t* data = &file[pos + 8];

        if (std::equal(type, type + 4, "IHDR")) {
            if (length != 13)
                throw FormatError("bad PNG IHDR");
            width = static_cast<int>(read_be32(data));
            height = static_cast<int>(read_be32(data + 4));
            const int bit_depth = data[8];
            const int color_type = data[9];
            const int interlace = data[12];
            if (width <= 0 || height <= 0 ||
                static_cast<std::uint64_t>(width) * height > (1ULL << 28))
                throw FormatError("PNG dimensions out of range");
            if (bit_depth != 8)
                throw FormatError("only 8-bit PNG is supported");
            if (color_type == 0) channels = 1;
            else if (color_type == 2) channels = 3;
            else throw FormatError("only grayscale or RGB PNG is supported");
            if (interlace != 0)
                throw FormatError("interlaced PNG is not supported");
            seen_ihdr = true;
        } else if (std::equal(type, type + 4, "IDAT")) {
            idat.insert(idat.end(), data, data + length);
        } else if (std::equal(type, type + 4, "IEND")) {
            seen_iend = true;
        }
        pos += 12 + length; // length + type + data + crc (crc not verified)
    }
    if (!seen_ihdr || idat.empty())
        throw FormatError("PNG missing IHDR or IDAT");

    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    const std::vector<std::uint8_t> raw = zlib_inflate(idat, (stride + 1) * height);

    // Undo per-scanline filters in place over a copy of the pixel bytes.
    std::vector<std::uint8_t> lines(stride * height);
    for (int y = 0; y < height; ++y) {
        const std::uint8_t filter = raw[(stride + 1) * y];
        const std::uint8_t* src = &raw[(stride + 1) * y + 1];
        std::uint8_t* dst = &lines[stride * y];
        const std::uint8_t* prev = y > 0 ? &lines[stride * (y - 1)] : nullptr;
        for (std::size_t i = 0; i < stride; ++i) {
            const int left = i >= static_cast<std::size_t>(channels) ? dst[i - channels] : 0;
            const int up = prev ? prev[i] : 0;
            const int up_left = (prev && i >= static_cast<std::size_t>(channels)) ? prev[i - channels] : 0;
            int value = src[i];
            switch (filter) {
                case 0: break;
                case 1: value += left; break;
                case 2: value += up; break;
                case 3: value += (left + up) / 2; break;
                case 4: value += paeth(left, up, up_left); break;
                default: throw FormatError("unknown PNG filter type");
            }
            dst[i] = static_cast<std::uint8_t>(value & 0xFF);
        }
    }

    GrayImage img(width, height);
    if (channels == 1) {
        img.pixels.assign(lines.begin(), lines.end());
    } else {
        for (std::size_t i = 0; i < img.pixels.size(); ++i)
            img.pixels[i] = to_gray(lines[i * 3], lines[i * 3 + 1], lines[i * 3 + 2]);
    }
    return img;
}

} // namespace detail
} // namespace graymark
