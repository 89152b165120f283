#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "graymark/lsb.hpp"
#include "graymark/metrics.hpp"
#include "oracles.hpp"

using namespace graymark;

TEST_CASE("embedded bits come back from the first pixels in order") {
    GrayImage img(4, 2, 0);
    BitStream s;
    s.bits = {1, 0, 1};
    const GrayImage wm = lsb_embed(img, s);
    CHECK(wm.pixels[0] == 1);
    CHECK(wm.pixels[1] == 0);
    CHECK(wm.pixels[2] == 1);
    for (std::size_t i = 3; i < wm.pixels.size(); ++i)
        CHECK(wm.pixels[i] == 0);
    CHECK(lsb_extract_n(wm, 3) == s);
}

TEST_CASE("embedding perturbs each pixel by at most its low bit") {
    const GrayImage img = oracle::random_image(64, 64, 21);
    const BitStream s = text_to_stream("document");
    const GrayImage wm = lsb_embed(img, s);
    REQUIRE(wm.pixel_count() == img.pixel_count());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        CHECK(std::abs(int(wm.pixels[i]) - int(img.pixels[i])) <= 1);
        CHECK((wm.pixels[i] >> 1) == (img.pixels[i] >> 1));
    }
    for (std::size_t i = s.size(); i < img.pixels.size(); ++i)
        CHECK(wm.pixels[i] == img.pixels[i]);
}

TEST_CASE("text payloads roundtrip through images") {
    const GrayImage img = oracle::random_image(32, 32, 5);
    for (const std::string text : {"", "a", "watermark payload"}) {
        const BitStream s = text_to_stream(text);
        const GrayImage wm = lsb_embed(img, s);
        CHECK(lsb_extract_n(wm, s.size()) == s);
        CHECK(stream_to_text(lsb_extract(wm)) == text);
    }
}

TEST_CASE("embedding distortion stays above the expected psnr") {
    const GrayImage img = oracle::random_image(512, 512, 88);
    const GrayImage wm = lsb_embed(img, text_to_stream("document"));
    CHECK(psnr(img, wm) >= 83.0); // at most 80 unit flips in 262144 pixels
}

TEST_CASE("oversized payloads are rejected") {
    GrayImage tiny(3, 3);
    BitStream ten;
    ten.bits.assign(10, 1);
    CHECK_THROWS_AS(lsb_embed(tiny, ten), CapacityError);
    CHECK_THROWS_AS(lsb_extract_n(tiny, 10), CapacityError);
}

TEST_CASE("header driven extraction reads exactly the declared payload") {
    const GrayImage img = oracle::random_image(16, 16, 2);
    const BitStream s = text_to_stream("hi");
    const BitStream out = lsb_extract(lsb_embed(img, s));
    CHECK(out == s);
}

TEST_CASE("header driven extraction validates what it can") {
    GrayImage small(3, 3); // 9 pixels, too small for a header
    CHECK_THROWS_AS(lsb_extract(small), MalformedHeaderError);

    GrayImage overrun(8, 8, 255); // header reads 65535 payload bits
    CHECK_THROWS_AS(lsb_extract(overrun), MalformedHeaderError);

    // A header that is not byte aligned is the caller's problem: the raw
    // bits come back and stream_to_text rejects them.
    GrayImage odd(8, 8, 0);
    odd.pixels[13] = 1;
    odd.pixels[14] = 1;
    odd.pixels[15] = 1; // header value 7
    const BitStream raw = lsb_extract(odd);
    CHECK(raw.size() == kHeaderBits + 7);
    CHECK_THROWS_AS(stream_to_text(raw), MalformedHeaderError);
}
