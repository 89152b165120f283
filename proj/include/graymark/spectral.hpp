#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "graymark/errors.hpp"
#include "graymark/raster.hpp"

namespace graymark {

// Row-major plane of double-precision intensities, nominally in [0,1].
struct RealPlane {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    RealPlane() = default;
    RealPlane(int w, int h, double fill = 0.0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
};

// Complex frequency plane. Index (u,v) = (row, column); for spectra of real
// planes, bin (-u mod H, -v mod W) is the conjugate of bin (u,v).
struct Spectrum {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> coeffs;

    Spectrum() = default;
    Spectrum(int w, int h) : width(w), height(h), coeffs(static_cast<std::size_t>(w) * h) {}

    std::complex<double> at(int u, int v) const {
        return coeffs[static_cast<std::size_t>(u) * width + v];
    }
    std::complex<double>& at(int u, int v) {
        return coeffs[static_cast<std::size_t>(u) * width + v];
    }
};

// pixels / 255, exactly.
inline RealPlane to_double(const GrayImage& img) {
    RealPlane plane(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        plane.values[i] = img.pixels[i] / 255.0;
    return plane;
}

// round(255 * clamp(v, 0, 1)), ties away from zero.
inline GrayImage from_double(const RealPlane& plane) {
    GrayImage img(plane.width, plane.height);
    for (std::size_t i = 0; i < plane.values.size(); ++i) {
        double v = plane.values[i];
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
        img.pixels[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
    return img;
}

namespace detail {

inline bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT over `count` interleaved rows of length n.
// sign = -1 forward, +1 inverse (unnormalized either way).
inline void fft_rows(std::complex<double>* data, int count, int n, int sign) {
    if (n == 1) return;

    // bit-reversal permutation, shared across rows
    std::vector<int> rev(static_cast<std::size_t>(n), 0);
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j |= bit;
        rev[i] = j;
    }

    // per-stage twiddles from a single table of e^(sign*2*pi*i*k/n)
    std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(n / 2));
    for (int k = 0; k < n / 2; ++k) {
        const double angle = sign * 2.0 * std::numbers::pi * k / n;
        twiddle[k] = {std::cos(angle), std::sin(angle)};
    }

    for (int r = 0; r < count; ++r) {
        std::complex<double>* row = data + static_cast<std::size_t>(r) * n;
        for (int i = 0; i < n; ++i)
            if (i < rev[i]) std::swap(row[i], row[rev[i]]);
        for (int len = 2; len <= n; len <<= 1) {
            const int step = n / len;
            for (int start = 0; start < n; start += len) {
                for (int k = 0; k < len / 2; ++k) {
                    const std::complex<double> w = twiddle[static_cast<std::size_t>(k) * step];
                    const std::complex<double> a = row[start + k];
                    const std::complex<double> b = row[start + k + len / 2] * w;
                    row[start + k] = a + b;
                    row[start + k + len / 2] = a - b;
                }
            }
        }
    }
}

inline void transpose(std::vector<std::complex<double>>& data, int rows, int cols) {
    std::vector<std::complex<double>> out(data.size());
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out[static_cast<std::size_t>(c) * rows + r] = data[static_cast<std::size_t>(r) * cols + c];
    data = std::move(out);
}

inline void fft2_inplace(std::vector<std::complex<double>>& data, int width, int height, int sign) {
    if (!is_pow2(width) || !is_pow2(height))
        throw GeometryError("FFT dimensions must be powers of two");
    fft_rows(data.data(), height, width, sign);
    transpose(data, height, width);
    fft_rows(data.data(), width, height, sign);
    transpose(data, width, height);
}

} // namespace detail

// Unnormalized forward 2D DFT:
//   F(u,v) = sum_x sum_y f(x,y) exp(-2*pi*i*(u*x/H + v*y/W))
// with x,u over rows and y,v over columns.
inline Spectrum fft2(const RealPlane& plane) {
    Spectrum spec(plane.width, plane.height);
    for (std::size_t i = 0; i < plane.values.size(); ++i)
        spec.coeffs[i] = plane.values[i];
    detail::fft2_inplace(spec.coeffs, spec.width, spec.height, -1);
    return spec;
}

// Inverse 2D DFT with 1/(H*W) normalization; keeps only the real part.
// If max_imag_residue is given it receives the largest |imaginary part|
// encountered, which stays below 1e-6 for conjugate-symmetric spectra.
inline RealPlane ifft2(const Spectrum& spec, double* max_imag_residue = nullptr) {
    std::vector<std::complex<double>> data = spec.coeffs;
    detail::fft2_inplace(data, spec.width, spec.height, +1);
    const double scale = 1.0 / (static_cast<double>(spec.width) * spec.height);
    RealPlane plane(spec.width, spec.height);
    double residue = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        plane.values[i] = data[i].real() * scale;
        const double im = std::abs(data[i].imag() * scale);
        if (im > residue) residue = im;
    }
    if (max_imag_residue) *max_imag_residue = residue;
    return plane;
}

} // namespace graymark
