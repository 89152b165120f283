#pragma once

#include <cmath>
#include <limits>

#include "graymark/bitstream.hpp"
#include "graymark/errors.hpp"
#include "graymark/raster.hpp"

namespace graymark {

// Mean squared error over raw 0-255 values, double precision.
inline double mse(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw GeometryError("mse: image dimensions differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        sum += d * d;
    }
    return sum / static_cast<double>(a.pixels.size());
}

// 10*log10(255^2 / MSE) in dB; +infinity for identical images.
inline double psnr(const GrayImage& a, const GrayImage& b) {
    const double err = mse(a, b);
    if (err == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / err);
}

// Normalized correlation: 1 - (bit mismatches / length), over the full
// stream including the header.
inline double nc(const BitStream& reference, const BitStream& extracted) {
    if (reference.size() != extracted.size())
        throw LengthError("nc: bit stream lengths differ");
    if (reference.empty())
        throw LengthError("nc: empty streams");
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < reference.size(); ++i)
        mismatches += reference.bits[i] ^ extracted.bits[i];
    return 1.0 - static_cast<double>(mismatches) / static_cast<double>(reference.size());
}

// Bit error rate, defined as 1 - nc so the two always sum to one.
inline double ber(const BitStream& reference, const BitStream& extracted) {
    return 1.0 - nc(reference, extracted);
}

} // namespace graymark
