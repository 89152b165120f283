#pragma once

#include <stdexcept>
#include <string>

namespace graymark {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Watermark text contains a character outside 7-bit ASCII.
struct EncodingError : Error { using Error::Error; };

// Payload does not fit the carrier (image, bin budget, header range).
struct CapacityError : Error { using Error::Error; };

// Stream ended before the declared number of bits.
struct TruncatedError : Error { using Error::Error; };

// Length header is unusable (not a whole number of bytes, or exceeds the carrier).
struct MalformedHeaderError : Error { using Error::Error; };

// Unreadable or unsupported image file.
struct FormatError : Error { using Error::Error; };

// Filesystem write/read failure.
struct IoError : Error { using Error::Error; };

// Dimension constraint violated (non power-of-two FFT size, image size mismatch).
struct GeometryError : Error { using Error::Error; };

// Stream length does not match the coordinate plan it is embedded with.
struct PlanMismatchError : Error { using Error::Error; };

// Scalar parameter outside its documented range.
struct ParamError : Error { using Error::Error; };

// Bit streams of different lengths fed to a pairwise metric.
struct LengthError : Error { using Error::Error; };

// Sweep configuration invalid or unparsable.
struct ConfigError : Error { using Error::Error; };

} // namespace graymark
