#pragma once

#include "graymark/bitstream.hpp"
#include "graymark/dft.hpp"
#include "graymark/errors.hpp"
#include "graymark/lsb.hpp"
#include "graymark/metrics.hpp"
#include "graymark/raster.hpp"

namespace graymark {

// Redundant dual-domain watermarking: the same stream goes into both the
// DFT magnitudes (robust layer) and the pixel LSBs (fragile layer), with a
// DFT-first, LSB-fallback extractor.

enum class HybridOrder {
    lsb_then_dft, // literal two-stage order; the DFT stage re-quantizes pixels
                  // and overwrites most of the LSB layer
    dft_then_lsb, // default: LSB applied last, so both layers stay intact
};

inline constexpr double kDefaultFallbackThreshold = 0.75;

enum class ExtractionPath { dft, lsb_fallback };

struct ExtractionReport {
    BitStream stream;
    ExtractionPath path = ExtractionPath::dft;
    double nc_dft = 0.0; // NC of the DFT attempt against the reference
};

inline GrayImage hybrid_embed(const GrayImage& img, const BitStream& stream, double alpha,
                              const CoordinatePlan& plan,
                              HybridOrder order = HybridOrder::dft_then_lsb) {
    if (order == HybridOrder::lsb_then_dft)
        return dft_embed(lsb_embed(img, stream), stream, alpha, plan);
    return lsb_embed(dft_embed(img, stream, alpha, plan), stream);
}

// Tries the robust DFT layer first; if its NC against the reference stream
// falls below the threshold, reads the fragile LSB layer instead.
inline ExtractionReport hybrid_extract(const GrayImage& watermarked, const GrayImage& original,
                                       const CoordinatePlan& plan, const BitStream& reference,
                                       double threshold = kDefaultFallbackThreshold) {
    if (reference.size() != plan.length)
        throw PlanMismatchError("reference stream length does not match the plan");
    BitStream dft_bits = dft_extract(watermarked, original, plan);
    const double nc_dft = nc(reference, dft_bits);
    if (nc_dft >= threshold)
        return {std::move(dft_bits), ExtractionPath::dft, nc_dft};
    return {lsb_extract_n(watermarked, plan.length), ExtractionPath::lsb_fallback, nc_dft};
}

// Reference-free plausibility check for a recovered stream: a well-formed
// stream carries a byte-aligned header that accounts for every bit.
inline bool validate_header(const BitStream& stream) {
    if (stream.size() < kHeaderBits)
        return false;
    const std::uint32_t payload_bits = header_value(stream);
    return payload_bits % 8 == 0 && kHeaderBits + payload_bits == stream.size();
}

} // namespace graymark
