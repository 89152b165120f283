#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graymark/errors.hpp"

namespace graymark {

// Watermark payload as an ordered sequence of bits. The first 16 bits are a
// header holding the payload bit count (MSB first); the rest is the payload.
struct BitStream {
    std::vector<std::uint8_t> bits; // each element is 0 or 1

    std::size_t size() const { return bits.size(); }
    bool empty() const { return bits.empty(); }
    std::uint8_t operator[](std::size_t i) const { return bits[i]; }

    friend bool operator==(const BitStream& a, const BitStream& b) = default;
};

inline constexpr std::size_t kHeaderBits = 16;
inline constexpr std::size_t kMaxTextChars = 8191; // 8191*8 = 65528 fits the 16-bit header

// Header value of a stream with at least kHeaderBits bits, MSB first.
inline std::uint32_t header_value(const BitStream& stream) {
    std::uint32_t value = 0;
    for (std::size_t i = 0; i < kHeaderBits; ++i)
        value = (value << 1) | stream.bits[i];
    return value;
}

// Text -> 16-bit length header + 8 bits per character, all MSB first.
inline BitStream text_to_stream(std::string_view text) {
    if (text.size() > kMaxTextChars)
        throw CapacityError("watermark text exceeds " + std::to_string(kMaxTextChars) + " characters");
    for (const char c : text)
        if (static_cast<unsigned char>(c) > 127)
            throw EncodingError("watermark text must be ASCII");

    const std::size_t payload_bits = text.size() * 8;
    BitStream stream;
    stream.bits.reserve(kHeaderBits + payload_bits);
    for (std::size_t i = 0; i < kHeaderBits; ++i)
        stream.bits.push_back(static_cast<std::uint8_t>((payload_bits >> (kHeaderBits - 1 - i)) & 1));
    for (const char c : text)
        for (int b = 7; b >= 0; --b)
            stream.bits.push_back(static_cast<std::uint8_t>((static_cast<unsigned char>(c) >> b) & 1));
    return stream;
}

// Inverse of text_to_stream. Bits beyond 16 + header are ignored.
inline std::string stream_to_text(const BitStream& stream) {
    if (stream.size() < kHeaderBits)
        throw TruncatedError("stream shorter than the 16-bit header");
    const std::uint32_t payload_bits = header_value(stream);
    if (payload_bits % 8 != 0)
        throw MalformedHeaderError("header bit count is not a multiple of 8");
    if (stream.size() < kHeaderBits + payload_bits)
        throw TruncatedError("stream shorter than its header declares");

    std::string text;
    text.reserve(payload_bits / 8);
    for (std::size_t i = 0; i < payload_bits; i += 8) {
        unsigned value = 0;
        for (std::size_t b = 0; b < 8; ++b)
            value = (value << 1) | stream.bits[kHeaderBits + i + b];
        text.push_back(static_cast<char>(value));
    }
    return text;
}

} // namespace graymark
