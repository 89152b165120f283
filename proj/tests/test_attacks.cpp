#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "graymark/attacks.hpp"
#include "graymark/metrics.hpp"
#include "oracles.hpp"

using namespace graymark;

namespace {

// Rounds half away from zero with the pipeline's tie tolerance, so exact-math
// ties resolve identically whichever summation order produced the value.
double round_half_away_ref(double v) {
    return v >= 0.0 ? std::floor(v + 0.5 + 1e-9) : std::ceil(v - 0.5 - 1e-9);
}

// Reference quantization pass over one 8x8 block, built on the direct-sum
// transforms: shift, transform, quantize half away from zero, restore.
GrayImage jpeg_block_reference(const GrayImage& block, const std::array<int, 64>& qtable) {
    REQUIRE(block.width == 8);
    REQUIRE(block.height == 8);
    double in[8][8], freq[8][8], back[8][8];
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            in[y][x] = static_cast<double>(block.at(x, y)) - 128.0;
    oracle::dct8_direct(in, freq);
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v) {
            const double q = qtable[static_cast<std::size_t>(u) * 8 + v];
            freq[u][v] = round_half_away_ref(freq[u][v] / q) * q;
        }
    oracle::idct8_direct(freq, back);
    GrayImage out(8, 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            double v = round_half_away_ref(back[y][x] + 128.0);
            if (v < 0.0) v = 0.0;
            if (v > 255.0) v = 255.0;
            out.at(x, y) = static_cast<std::uint8_t>(v);
        }
    return out;
}

constexpr std::array<int, 64> kAnnexKLuma = {
    16, 11, 10, 16, 24,  40,  51,  61,
    12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,
    14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,
    24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103, 99,
};

} // namespace

TEST_CASE("quality 50 reproduces the standard luminance table") {
    CHECK(quality_table(50) == kAnnexKLuma);
}

TEST_CASE("scaled tables match hand-computed entries") {
    CHECK(quality_table(90)[0] == 3);   // (16*20 + 50) / 100
    CHECK(quality_table(10)[0] == 80);  // (16*500 + 50) / 100
    CHECK(quality_table(70)[0] == 10);  // (16*60 + 50) / 100

    const auto q100 = quality_table(100);
    for (const int e : q100)
        CHECK(e == 1); // scale 0 clamps every entry up to 1

    const auto q1 = quality_table(1);
    for (const int e : q1)
        CHECK(e == 255); // scale 5000 clamps every entry down to 255
}

TEST_CASE("lower quality never quantizes more finely") {
    const auto q70 = quality_table(70), q30 = quality_table(30);
    for (std::size_t i = 0; i < 64; ++i)
        CHECK(q30[i] >= q70[i]);
}

TEST_CASE("quality factor bounds are enforced") {
    CHECK_THROWS_AS(quality_table(0), ParamError);
    CHECK_THROWS_AS(quality_table(101), ParamError);
    CHECK_THROWS_AS(jpeg_attack(GrayImage(8, 8), 0), ParamError);
}

TEST_CASE("the block pipeline is bit exact against the direct transforms") {
    for (int trial = 0; trial < 200; ++trial) {
        const GrayImage block = oracle::random_image(8, 8, 4000 + trial);
        const int qf = 1 + (trial * 7) % 100;
        CAPTURE(trial, qf);
        REQUIRE(jpeg_attack(block, qf) == jpeg_block_reference(block, quality_table(qf)));
    }
}

TEST_CASE("blocks are processed independently") {
    const GrayImage img = oracle::random_image(16, 16, 31);
    const GrayImage whole = jpeg_attack(img, 40);
    for (int by = 0; by < 16; by += 8)
        for (int bx = 0; bx < 16; bx += 8) {
            GrayImage block(8, 8);
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    block.at(x, y) = img.at(bx + x, by + y);
            const GrayImage alone = jpeg_attack(block, 40);
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    CHECK(whole.at(bx + x, by + y) == alone.at(x, y));
        }
}

TEST_CASE("sides that are not multiples of eight survive") {
    const GrayImage img = oracle::random_image(20, 12, 77);
    const GrayImage out = jpeg_attack(img, 50);
    CHECK(out.width == 20);
    CHECK(out.height == 12);
    CHECK(jpeg_attack(img, 50) == out); // deterministic
}

TEST_CASE("quality ordering shows in the distortion") {
    const GrayImage img = oracle::random_image(64, 64, 3);
    const double high = psnr(img, jpeg_attack(img, 90));
    const double low = psnr(img, jpeg_attack(img, 20));
    CHECK(high > low);
    CHECK(low > 10.0);
}

TEST_CASE("near-lossless quality barely disturbs smooth content") {
    GrayImage smooth(64, 64);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x)
            smooth.at(x, y) = static_cast<std::uint8_t>(96 + x / 2 + y / 4);
    CHECK(psnr(smooth, jpeg_attack(smooth, 100)) > 45.0);
}

TEST_CASE("gaussian noise has the requested strength") {
    const GrayImage img(512, 512, 128);
    const GrayImage noisy = gaussian_attack(img, 0.01, 42);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double d = double(noisy.pixels[i]) - double(img.pixels[i]);
        sum += d;
        sum_sq += d * d;
    }
    const double n = static_cast<double>(img.pixel_count());
    const double mean = sum / n;
    const double std_dev = std::sqrt(sum_sq / n - mean * mean);
    CHECK(std::abs(mean) < 0.5);
    CHECK(std_dev == Catch::Approx(25.5).epsilon(0.05)); // 255 * sqrt(0.01)
}

TEST_CASE("gaussian noise is seeded and reproducible") {
    const GrayImage img = oracle::random_image(64, 64, 9);
    CHECK(gaussian_attack(img, 0.005, 1) == gaussian_attack(img, 0.005, 1));
    CHECK(gaussian_attack(img, 0.005, 1) != gaussian_attack(img, 0.005, 2));
    CHECK(gaussian_attack(img, 0.0, 1) == img);
    CHECK_THROWS_AS(gaussian_attack(img, -0.1, 1), ParamError);
}

TEST_CASE("impulse noise corrupts the requested pixel fraction") {
    const GrayImage img(512, 512, 128);
    const GrayImage noisy = saltpepper_attack(img, 0.10, 42);
    std::size_t zeros = 0, fulls = 0, untouched = 0;
    for (const auto p : noisy.pixels) {
        if (p == 0) ++zeros;
        else if (p == 255) ++fulls;
        else {
            CHECK(p == 128);
            ++untouched;
        }
    }
    const double corrupted = static_cast<double>(zeros + fulls);
    CHECK(corrupted == Catch::Approx(26214.4).margin(500));
    CHECK(double(zeros) == Catch::Approx(corrupted / 2).margin(400));
    CHECK(untouched + zeros + fulls == img.pixel_count());
}

TEST_CASE("impulse noise is seeded and reproducible") {
    const GrayImage img = oracle::random_image(64, 64, 10);
    CHECK(saltpepper_attack(img, 0.05, 3) == saltpepper_attack(img, 0.05, 3));
    CHECK(saltpepper_attack(img, 0.05, 3) != saltpepper_attack(img, 0.05, 4));
    CHECK(saltpepper_attack(img, 0.0, 3) == img);

    const GrayImage all = saltpepper_attack(img, 1.0, 3);
    for (const auto p : all.pixels)
        CHECK((p == 0 || p == 255));

    CHECK_THROWS_AS(saltpepper_attack(img, -0.01, 3), ParamError);
    CHECK_THROWS_AS(saltpepper_attack(img, 1.01, 3), ParamError);
}

TEST_CASE("the dispatcher reproduces each direct call") {
    const GrayImage img = oracle::random_image(32, 32, 44);
    CHECK(apply_attack(img, {AttackKind::jpeg, 70.0, 0}) == jpeg_attack(img, 70));
    CHECK(apply_attack(img, {AttackKind::gaussian, 0.01, 5}) == gaussian_attack(img, 0.01, 5));
    CHECK(apply_attack(img, {AttackKind::saltpepper, 0.1, 6}) == saltpepper_attack(img, 0.1, 6));
}

TEST_CASE("attack kinds have stable names") {
    CHECK(attack_kind_name(AttackKind::jpeg) == "jpeg");
    CHECK(attack_kind_name(AttackKind::gaussian) == "gauss");
    CHECK(attack_kind_name(AttackKind::saltpepper) == "sp");
}
