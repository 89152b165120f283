#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graymark/dft.hpp"
#include "graymark/errors.hpp"
#include "graymark/raster.hpp"
#include "graymark/rng.hpp"
#include "graymark/spectral.hpp"

namespace graymark {

// Synthetic benchmark images. Natural photographs carry broadband energy in
// the frequency band the watermarker modulates; these generators plant that
// energy deliberately (a pack of seeded mid-band cosine gratings) on top of
// a recognizable base pattern, so robustness experiments behave the way they
// do on photographic content. Dimensions must be powers of two.

namespace detail {

inline constexpr int kLineCount = 88;
inline constexpr double kLineAmplitude = 0.0214; // |F| ~ 2800 at 512x512
inline constexpr double kLineBandInner = 0.12;   // inside the default (0.10, 0.30) band
inline constexpr double kLineBandOuter = 0.19;

// Sum of `count` cosine gratings with unit-safe amplitude and seeded phases,
// synthesized directly in the frequency plane. Bins are drawn from a narrow
// sub-band of the default annulus so every grating lands on a coordinate the
// watermark planner can use.
inline RealPlane band_lines(int width, int height, std::uint64_t seed, int count,
                            double amplitude) {
    Spectrum spec;
    spec.width = width;
    spec.height = height;
    spec.coeffs.assign(static_cast<std::size_t>(width) * height, {0.0, 0.0});

    if (width < 8 || height < 8)
        return ifft2(spec);

    const double min_dim = static_cast<double>(std::min(width, height));
    const double r_lo = kLineBandInner * min_dim;
    const double r_hi = kLineBandOuter * min_dim;
    const double bin_mag = amplitude * width * height / 2.0;

    SplitMix64 rng(seed);
    std::set<std::pair<int, int>> used;
    int placed = 0;
    for (long attempt = 0; placed < count && attempt < 64L * count; ++attempt) {
        const int u = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(height / 2 - 1)));
        const int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(width)));
        const double r = band_radius(u, v, height, width);
        if (r < r_lo || r > r_hi)
            continue;
        if (!used.insert({u, v}).second)
            continue;
        const double phase = 2.0 * std::numbers::pi * rng.next_double();
        const std::complex<double> coeff = std::polar(bin_mag, phase);
        const Coord mirror = conjugate_bin({u, v}, height, width);
        spec.at(u, v) = coeff;
        spec.at(mirror.u, mirror.v) = std::conj(coeff);
        ++placed;
    }
    return ifft2(spec);
}

inline GrayImage compose(int width, int height, std::uint64_t seed,
                         double (*base)(int x, int y, int w, int h)) {
    RealPlane plane = band_lines(width, height, seed, kLineCount, kLineAmplitude);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            plane.values[static_cast<std::size_t>(y) * width + x] += base(x, y, width, height);
    return from_double(plane);
}

} // namespace detail

// Diagonal luminance ramp.
inline GrayImage make_gradient(int width = 512, int height = 512) {
    return detail::compose(width, height, fnv1a64("fixture|gradient"),
                           [](int x, int y, int w, int h) {
                               return 0.3 + 0.4 * (x + y) / static_cast<double>(w + h - 2);
                           });
}

// Low-contrast checkerboard with 16-pixel cells.
inline GrayImage make_checker(int width = 512, int height = 512) {
    return detail::compose(width, height, fnv1a64("fixture|checker"),
                           [](int x, int y, int, int) {
                               return ((x / 16 + y / 16) & 1) ? 0.6 : 0.4;
                           });
}

// Band-limited noise around mid gray.
inline GrayImage make_texture(int width = 512, int height = 512) {
    return detail::compose(width, height, fnv1a64("fixture|texture"),
                           [](int, int, int, int) { return 0.5; });
}

inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {"gradient", "checker", "texture"};
    return names;
}

inline GrayImage make_fixture(std::string_view name, int width = 512, int height = 512) {
    if (name == "gradient") return make_gradient(width, height);
    if (name == "checker") return make_checker(width, height);
    if (name == "texture") return make_texture(width, height);
    throw ParamError("unknown fixture \"" + std::string(name) + "\"");
}

} // namespace graymark
