#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "graymark/bitstream.hpp"
#include "graymark/errors.hpp"
#include "graymark/raster.hpp"
#include "graymark/rng.hpp"
#include "graymark/spectral.hpp"

namespace graymark {

// Frequency-domain watermarking by multiplicative magnitude modulation at
// seeded mid-band coordinates. Non-blind: extraction compares against the
// spectrum of the pristine original.

struct Coord {
    int u = 0; // row (frequency index along height)
    int v = 0; // column (frequency index along width)
    friend bool operator==(const Coord&, const Coord&) = default;
};

// Annulus bounds as fractions of min(H, W).
struct Band {
    double inner = 0.10;
    double outer = 0.30;
};

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr double kDefaultAlpha = 0.1;
inline constexpr double kDefaultMagFloor = 1.0;

// Ordered bin selection shared by embedder and extractor. Derived from the
// original image only, so both sides of the non-blind protocol agree.
struct CoordinatePlan {
    std::uint64_t seed = kDefaultSeed;
    std::size_t length = 0;
    Band band;
    double mag_floor = kDefaultMagFloor;
    std::vector<Coord> coords;
};

namespace detail {

// Radius of bin (u,v) in the centre-shifted spectrum, i.e. its frequency
// distance from DC. min(i, N-i) is the shifted offset along each axis.
inline double band_radius(int u, int v, int height, int width) {
    const double du = std::min(u, height - u);
    const double dv = std::min(v, width - v);
    return std::sqrt(du * du + dv * dv);
}

// Conjugate partner of a bin under the Hermitian symmetry of real images.
inline Coord conjugate_bin(Coord c, int height, int width) {
    return {c.u == 0 ? 0 : height - c.u, c.v == 0 ? 0 : width - c.v};
}

inline bool self_conjugate(Coord c, int height, int width) {
    return (c.u == 0 || c.u == height / 2) && (c.v == 0 || c.v == width / 2);
}

} // namespace detail

// Enumerates every half-plane bin (u < H/2, self-conjugate bins excluded)
// inside the band annulus whose original magnitude reaches mag_floor, in
// lexicographic (u,v) order, then Fisher-Yates shuffles with a SplitMix64
// stream and keeps the first `length`. Because the shuffle does not depend
// on `length`, a shorter plan is always a prefix of a longer one.
inline CoordinatePlan plan_coords(const GrayImage& original, std::uint64_t seed,
                                  std::size_t length, Band band = {},
                                  double mag_floor = kDefaultMagFloor) {
    if (length < 1)
        throw ParamError("plan length must be at least 1");
    if (!(band.inner > 0.0) || !(band.outer > band.inner) || band.outer > 0.5)
        throw ParamError("band must satisfy 0 < inner < outer <= 0.5");

    const Spectrum spec = fft2(to_double(original));
    const int height = spec.height;
    const int width = spec.width;
    const double min_dim = static_cast<double>(std::min(height, width));
    const double r_lo = band.inner * min_dim;
    const double r_hi = band.outer * min_dim;

    std::vector<Coord> eligible;
    for (int u = 0; u < height / 2; ++u) {
        for (int v = 0; v < width; ++v) {
            const Coord c{u, v};
            if (detail::self_conjugate(c, height, width))
                continue;
            // The u=0 row contains its own conjugates ((0,v) pairs with
            // (0,W-v)); keep only the v < W/2 half so no plan can modulate
            // one bin twice through two different stream bits.
            if (u == 0 && v > width / 2)
                continue;
            const double r = detail::band_radius(u, v, height, width);
            if (r < r_lo || r > r_hi)
                continue;
            if (std::abs(spec.at(u, v)) < mag_floor)
                continue;
            eligible.push_back(c);
        }
    }
    if (eligible.size() < length)
        throw CapacityError("only " + std::to_string(eligible.size()) +
                            " eligible bins for a plan of " + std::to_string(length));

    SplitMix64 rng(seed);
    for (std::size_t i = eligible.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
        std::swap(eligible[i], eligible[j]);
    }
    eligible.resize(length);

    return CoordinatePlan{seed, length, band, mag_floor, std::move(eligible)};
}

// Scales each planned bin and its conjugate partner by (1+alpha) for a 1 bit
// and (1-alpha) for a 0 bit. Modulating both partners keeps the spectrum
// Hermitian, so the inverse transform stays real.
inline void modulate_spectrum(Spectrum& spec, const BitStream& stream, double alpha,
                              const CoordinatePlan& plan) {
    if (stream.size() != plan.length)
        throw PlanMismatchError("bit stream length does not match the plan");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw ParamError("alpha must lie in (0, 1)");
    for (std::size_t k = 0; k < plan.coords.size(); ++k) {
        const Coord c = plan.coords[k];
        if (c.u < 0 || c.u >= spec.height || c.v < 0 || c.v >= spec.width)
            throw GeometryError("plan coordinate outside the spectrum");
        const double factor = stream.bits[k] ? 1.0 + alpha : 1.0 - alpha;
        const Coord m = detail::conjugate_bin(c, spec.height, spec.width);
        spec.at(c.u, c.v) *= factor;
        spec.at(m.u, m.v) *= factor;
    }
}

inline GrayImage dft_embed(const GrayImage& img, const BitStream& stream, double alpha,
                           const CoordinatePlan& plan) {
    Spectrum spec = fft2(to_double(img));
    modulate_spectrum(spec, stream, alpha, plan);
    double residue = 0.0;
    const RealPlane plane = ifft2(spec, &residue);
    assert(residue < 1e-6); // symmetric modulation keeps the plane real
    return from_double(plane);
}

// Bit k reads 1 when the watermarked magnitude exceeds the original one at
// planned coordinate k; ties decode as 0.
inline BitStream dft_extract(const GrayImage& watermarked, const GrayImage& original,
                             const CoordinatePlan& plan) {
    if (watermarked.width != original.width || watermarked.height != original.height)
        throw GeometryError("watermarked and original dimensions differ");
    const Spectrum spec_w = fft2(to_double(watermarked));
    const Spectrum spec_o = fft2(to_double(original));
    BitStream stream;
    stream.bits.reserve(plan.coords.size());
    for (const Coord c : plan.coords) {
        if (c.u < 0 || c.u >= spec_w.height || c.v < 0 || c.v >= spec_w.width)
            throw GeometryError("plan coordinate outside the spectrum");
        stream.bits.push_back(std::abs(spec_w.at(c.u, c.v)) > std::abs(spec_o.at(c.u, c.v)) ? 1 : 0);
    }
    return stream;
}

} // namespace graymark
