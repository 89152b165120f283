#pragma once

#include "graymark/bitstream.hpp"
#include "graymark/errors.hpp"
#include "graymark/raster.hpp"

namespace graymark {

// Spatial-domain watermarking: the stream replaces pixel LSBs in row-major
// order. Fragile by design; any lossy processing destroys it.

inline GrayImage lsb_embed(const GrayImage& img, const BitStream& stream) {
    if (stream.size() > img.pixel_count())
        throw CapacityError("bit stream longer than the pixel count");
    GrayImage out = img;
    for (std::size_t i = 0; i < stream.size(); ++i)
        out.pixels[i] = static_cast<std::uint8_t>((out.pixels[i] & ~1u) | stream.bits[i]);
    return out;
}

// First n pixel LSBs, no header interpretation.
inline BitStream lsb_extract_n(const GrayImage& img, std::size_t n) {
    if (n > img.pixel_count())
        throw CapacityError("requested more bits than the image holds");
    BitStream stream;
    stream.bits.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        stream.bits.push_back(img.pixels[i] & 1u);
    return stream;
}

// Reads the 16-bit header from the LSB plane, then header + payload bits.
// A header that is not a multiple of 8 is returned as-is; only a payload
// length exceeding the image is rejected here.
inline BitStream lsb_extract(const GrayImage& img) {
    if (img.pixel_count() < kHeaderBits)
        throw MalformedHeaderError("image too small to hold a stream header");
    const BitStream header = lsb_extract_n(img, kHeaderBits);
    const std::size_t total_bits = kHeaderBits + header_value(header);
    if (total_bits > img.pixel_count())
        throw MalformedHeaderError("header declares more bits than the image holds");
    return lsb_extract_n(img, total_bits);
}

} // namespace graymark
