#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "graymark/errors.hpp"
#include "graymark/raster.hpp"
#include "graymark/rng.hpp"

namespace graymark {

// Deterministic simulations of the three attack channels. The JPEG attack is
// a quantization-core simulation (block DCT, quantize, dequantize, inverse),
// not a file codec: entropy coding is lossless and irrelevant to watermark
// survival.

enum class AttackKind { jpeg, gaussian, saltpepper };

struct AttackSpec {
    AttackKind kind = AttackKind::jpeg;
    double parameter = 0.0; // QF, variance, or density depending on kind
    std::uint64_t seed = 0; // noise attacks only
};

inline std::string attack_kind_name(AttackKind kind) {
    switch (kind) {
        case AttackKind::jpeg: return "jpeg";
        case AttackKind::gaussian: return "gauss";
        case AttackKind::saltpepper: return "sp";
    }
    return "?";
}

namespace detail {

// ITU-T T.81 Annex K luminance quantization table.
inline constexpr std::array<int, 64> kBaseLumaTable = {
    16, 11, 10, 16, 24,  40,  51,  61,
    12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,
    14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,
    24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103, 99,
};

// Orthonormal 8x8 DCT-II basis, row r = cos((2x+1) r pi / 16) scaled.
struct DctBasis {
    std::array<double, 64> m{};
    DctBasis() {
        for (int r = 0; r < 8; ++r) {
            const double scale = r == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int x = 0; x < 8; ++x)
                m[static_cast<std::size_t>(r) * 8 + x] =
                    scale * std::cos((2 * x + 1) * r * std::numbers::pi / 16.0);
        }
    }
};

inline const DctBasis& dct_basis() {
    static const DctBasis basis;
    return basis;
}

// block = B * block * B^T (separable forward DCT); inverse uses B^T * block * B.
inline void dct8x8(const double* in, double* out, bool forward) {
    const auto& basis = dct_basis().m;
    double tmp[64];
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            double sum = 0.0;
            for (int k = 0; k < 8; ++k) {
                const double b = forward ? basis[static_cast<std::size_t>(r) * 8 + k]
                                         : basis[static_cast<std::size_t>(k) * 8 + r];
                sum += b * in[k * 8 + c];
            }
            tmp[r * 8 + c] = sum;
        }
    }
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            double sum = 0.0;
            for (int k = 0; k < 8; ++k) {
                const double b = forward ? basis[static_cast<std::size_t>(c) * 8 + k]
                                         : basis[static_cast<std::size_t>(k) * 8 + c];
                sum += tmp[r * 8 + k] * b;
            }
            out[r * 8 + c] = sum;
        }
    }
}

// Round half away from zero. Basis products for rows 0 and 4 are 1/8 in
// exact arithmetic, so scaled coefficients can land exactly on a tie; the
// tolerance makes those ties resolve the same way regardless of the
// floating-point summation order that produced the value. Genuine non-ties
// sit at least 1/(8*255) from a boundary, far outside the tolerance.
inline constexpr double kTieEps = 1e-9;

inline double round_half_away(double v) {
    return v >= 0.0 ? std::floor(v + 0.5 + kTieEps) : std::ceil(v - 0.5 - kTieEps);
}

} // namespace detail

// IJG quality scaling of the base luminance table. S = 5000/qf (integer
// division) below 50, otherwise 200 - 2*qf; entries clamp to [1, 255].
inline std::array<int, 64> quality_table(int qf) {
    if (qf < 1 || qf > 100)
        throw ParamError("JPEG quality factor must be in [1, 100]");
    const int scale = qf < 50 ? 5000 / qf : 200 - 2 * qf;
    std::array<int, 64> table{};
    for (std::size_t i = 0; i < 64; ++i) {
        int entry = (detail::kBaseLumaTable[i] * scale + 50) / 100;
        if (entry < 1) entry = 1;
        if (entry > 255) entry = 255;
        table[i] = entry;
    }
    return table;
}

// Per 8x8 block: level shift by -128, forward DCT, divide by the quality
// table rounding half away from zero, multiply back, inverse DCT, shift,
// round and clamp. Images whose sides are not multiples of 8 are padded by
// edge replication and cropped back.
inline GrayImage jpeg_attack(const GrayImage& img, int qf) {
    const std::array<int, 64> qtable = quality_table(qf);

    const int padded_w = (img.width + 7) / 8 * 8;
    const int padded_h = (img.height + 7) / 8 * 8;
    GrayImage padded = img;
    if (padded_w != img.width || padded_h != img.height) {
        padded = GrayImage(padded_w, padded_h);
        for (int y = 0; y < padded_h; ++y) {
            const int sy = y < img.height ? y : img.height - 1;
            for (int x = 0; x < padded_w; ++x)
                padded.at(x, y) = img.at(x < img.width ? x : img.width - 1, sy);
        }
    }

    GrayImage out(padded_w, padded_h);
    double block[64], coeffs[64], restored[64];
    for (int by = 0; by < padded_h; by += 8) {
        for (int bx = 0; bx < padded_w; bx += 8) {
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    block[y * 8 + x] = static_cast<double>(padded.at(bx + x, by + y)) - 128.0;
            detail::dct8x8(block, coeffs, true);
            for (int i = 0; i < 64; ++i) {
                const double q = static_cast<double>(qtable[static_cast<std::size_t>(i)]);
                coeffs[i] = detail::round_half_away(coeffs[i] / q) * q;
            }
            detail::dct8x8(coeffs, restored, false);
            for (int y = 0; y < 8; ++y) {
                for (int x = 0; x < 8; ++x) {
                    double v = detail::round_half_away(restored[y * 8 + x] + 128.0);
                    if (v < 0.0) v = 0.0;
                    if (v > 255.0) v = 255.0;
                    out.at(bx + x, by + y) = static_cast<std::uint8_t>(v);
                }
            }
        }
    }

    if (padded_w == img.width && padded_h == img.height)
        return out;
    GrayImage cropped(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            cropped.at(x, y) = out.at(x, y);
    return cropped;
}

// Additive white Gaussian noise; variance is on the normalized [0,1]
// intensity scale, so the per-pixel deviation is 255*sqrt(variance) levels.
inline GrayImage gaussian_attack(const GrayImage& img, double variance, std::uint64_t seed) {
    if (variance < 0.0)
        throw ParamError("noise variance must be non-negative");
    if (variance == 0.0)
        return img;
    const double sigma = std::sqrt(variance);
    SplitMix64 rng(seed);
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double noisy = img.pixels[i] + 255.0 * sigma * rng.next_gaussian();
        double v = detail::round_half_away(noisy);
        if (v < 0.0) v = 0.0;
        if (v > 255.0) v = 255.0;
        out.pixels[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

// Impulse noise: each pixel independently becomes 0 with probability
// density/2, 255 with probability density/2, and is untouched otherwise.
inline GrayImage saltpepper_attack(const GrayImage& img, double density, std::uint64_t seed) {
    if (density < 0.0 || density > 1.0)
        throw ParamError("noise density must be in [0, 1]");
    if (density == 0.0)
        return img;
    SplitMix64 rng(seed);
    GrayImage out = img;
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
        const double roll = rng.next_double();
        if (roll < density / 2.0)
            out.pixels[i] = 0;
        else if (roll < density)
            out.pixels[i] = 255;
    }
    return out;
}

inline GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec) {
    switch (spec.kind) {
        case AttackKind::jpeg: return jpeg_attack(img, static_cast<int>(spec.parameter));
        case AttackKind::gaussian: return gaussian_attack(img, spec.parameter, spec.seed);
        case AttackKind::saltpepper: return saltpepper_attack(img, spec.parameter, spec.seed);
    }
    throw ParamError("unknown attack kind");
}

} // namespace graymark
