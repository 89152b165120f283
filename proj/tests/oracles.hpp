#pragma once

// Independent reference implementations the test suite checks the library
// against. Everything here is written the slow, obvious way on purpose and
// shares no code with the headers under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "graymark/raster.hpp"
#include "graymark/spectral.hpp"

namespace oracle {

// Direct O(N^4) forward DFT, same convention as the library: rows are the
// first index, unnormalized, exponent -2*pi*i*(u*x/H + v*y/W).
inline graymark::Spectrum dft2_direct(const graymark::RealPlane& plane) {
    const int h = plane.height;
    const int w = plane.width;
    graymark::Spectrum spec(w, h);
    for (int u = 0; u < h; ++u) {
        for (int v = 0; v < w; ++v) {
            std::complex<double> sum = 0.0;
            for (int x = 0; x < h; ++x) {
                for (int y = 0; y < w; ++y) {
                    const double angle = -2.0 * std::numbers::pi *
                                         (static_cast<double>(u) * x / h +
                                          static_cast<double>(v) * y / w);
                    sum += plane.at(y, x) * std::complex<double>(std::cos(angle), std::sin(angle));
                }
            }
            spec.at(u, v) = sum;
        }
    }
    return spec;
}

// Direct inverse with 1/(H*W), real part only.
inline graymark::RealPlane idft2_direct(const graymark::Spectrum& spec) {
    const int h = spec.height;
    const int w = spec.width;
    graymark::RealPlane plane(w, h);
    for (int x = 0; x < h; ++x) {
        for (int y = 0; y < w; ++y) {
            std::complex<double> sum = 0.0;
            for (int u = 0; u < h; ++u) {
                for (int v = 0; v < w; ++v) {
                    const double angle = 2.0 * std::numbers::pi *
                                         (static_cast<double>(u) * x / h +
                                          static_cast<double>(v) * y / w);
                    sum += spec.at(u, v) * std::complex<double>(std::cos(angle), std::sin(angle));
                }
            }
            plane.at(y, x) = sum.real() / (static_cast<double>(h) * w);
        }
    }
    return plane;
}

// Orthonormal 8x8 DCT-II by the defining double sum.
inline void dct8_direct(const double in[8][8], double out[8][8]) {
    for (int u = 0; u < 8; ++u) {
        for (int v = 0; v < 8; ++v) {
            double sum = 0.0;
            for (int x = 0; x < 8; ++x)
                for (int y = 0; y < 8; ++y)
                    sum += in[x][y] *
                           std::cos((2 * x + 1) * u * std::numbers::pi / 16.0) *
                           std::cos((2 * y + 1) * v * std::numbers::pi / 16.0);
            const double cu = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            const double cv = v == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            out[u][v] = cu * cv * sum;
        }
    }
}

// Matching inverse (DCT-III with the same normalization).
inline void idct8_direct(const double in[8][8], double out[8][8]) {
    for (int x = 0; x < 8; ++x) {
        for (int y = 0; y < 8; ++y) {
            double sum = 0.0;
            for (int u = 0; u < 8; ++u) {
                for (int v = 0; v < 8; ++v) {
                    const double cu = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
                    const double cv = v == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
                    sum += cu * cv * in[u][v] *
                           std::cos((2 * x + 1) * u * std::numbers::pi / 16.0) *
                           std::cos((2 * y + 1) * v * std::numbers::pi / 16.0);
                }
            }
            out[x][y] = sum;
        }
    }
}

// Deterministic random image, independent of the library's generator.
inline graymark::GrayImage random_image(int width, int height, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    graymark::GrayImage img(width, height);
    for (auto& p : img.pixels)
        p = static_cast<std::uint8_t>(dist(rng));
    return img;
}

inline graymark::RealPlane random_plane(int width, int height, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    graymark::RealPlane plane(width, height);
    for (auto& v : plane.values)
        v = dist(rng);
    return plane;
}

inline double max_complex_delta(const graymark::Spectrum& a, const graymark::Spectrum& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        worst = std::max(worst, std::abs(a.coeffs[i] - b.coeffs[i]));
    return worst;
}

inline double max_real_delta(const graymark::RealPlane& a, const graymark::RealPlane& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

} // namespace oracle
