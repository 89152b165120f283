#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graymark/attacks.hpp"
#include "graymark/bench.hpp"
#include "graymark/bitstream.hpp"
#include "graymark/dft.hpp"
#include "graymark/errors.hpp"
#include "graymark/fixtures.hpp"
#include "graymark/hybrid.hpp"
#include "graymark/lsb.hpp"
#include "graymark/metrics.hpp"
#include "graymark/raster.hpp"

namespace {

struct PlanOptions {
    std::uint64_t seed = graymark::kDefaultSeed;
    double band_inner = graymark::Band{}.inner;
    double band_outer = graymark::Band{}.outer;
    double mag_floor = graymark::kDefaultMagFloor;

    graymark::Band band() const { return {band_inner, band_outer}; }
};

void add_plan_options(CLI::App* cmd, PlanOptions& opts) {
    cmd->add_option("--seed", opts.seed, "coordinate plan seed");
    cmd->add_option("--band-inner", opts.band_inner, "annulus inner radius fraction");
    cmd->add_option("--band-outer", opts.band_outer, "annulus outer radius fraction");
    cmd->add_option("--mag-floor", opts.mag_floor, "minimum original magnitude for plan bins");
}

graymark::BitStream parse_bits(const std::string& s) {
    graymark::BitStream stream;
    stream.bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1')
            throw graymark::ParamError("bit strings may only contain 0 and 1");
        stream.bits.push_back(c == '1' ? 1 : 0);
    }
    return stream;
}

// Reads a self-describing frequency watermark in two passes: a 16-bit plan
// recovers the length header, then the full plan (of which the header plan
// is a prefix) recovers everything.
graymark::BitStream two_phase_dft_extract(const graymark::GrayImage& watermarked,
                                          const graymark::GrayImage& original,
                                          const PlanOptions& opts) {
    using namespace graymark;
    const CoordinatePlan head_plan =
        plan_coords(original, opts.seed, kHeaderBits, opts.band(), opts.mag_floor);
    const BitStream head = dft_extract(watermarked, original, head_plan);
    const std::size_t payload = header_value(head);
    if (payload % 8 != 0 || payload > kMaxTextChars * 8)
        throw MalformedHeaderError("recovered header is not a valid payload length");
    const CoordinatePlan full_plan =
        plan_coords(original, opts.seed, kHeaderBits + payload, opts.band(), opts.mag_floor);
    return dft_extract(watermarked, original, full_plan);
}

std::string printable_or_note(const graymark::BitStream& stream) {
    try {
        return graymark::stream_to_text(stream);
    } catch (const graymark::Error&) {
        return "(payload not decodable)";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"grayscale image watermarking toolkit"};
    app.require_subcommand(1);

    // embed
    auto* embed = app.add_subcommand("embed", "embed a text watermark");
    std::string e_method, e_in, e_out, e_text = "document", e_order = "dft_then_lsb";
    double e_alpha = graymark::kDefaultAlpha;
    PlanOptions e_plan;
    embed->add_option("--method", e_method, "lsb, dft, or hybrid")->required();
    embed->add_option("--in", e_in, "input image (PGM or PNG)")->required();
    embed->add_option("--out", e_out, "output PGM path")->required();
    embed->add_option("--text", e_text, "watermark text");
    embed->add_option("--alpha", e_alpha, "embedding strength");
    embed->add_option("--order", e_order, "hybrid layer order (lsb_then_dft|dft_then_lsb)");
    add_plan_options(embed, e_plan);

    // extract
    auto* extract = app.add_subcommand("extract", "recover a text watermark");
    std::string x_method, x_in, x_original, x_reference;
    bool x_has_reference = false;
    double x_threshold = graymark::kDefaultFallbackThreshold;
    PlanOptions x_plan;
    extract->add_option("--method", x_method, "lsb, dft, or hybrid")->required();
    extract->add_option("--in", x_in, "watermarked image")->required();
    extract->add_option("--original", x_original, "original image (dft/hybrid)");
    extract->add_option("--reference", x_reference, "reference text for NC/BER")
        ->each([&](const std::string&) { x_has_reference = true; });
    extract->add_option("--threshold", x_threshold, "hybrid fallback threshold");
    add_plan_options(extract, x_plan);

    // attack
    auto* attack = app.add_subcommand("attack", "degrade an image");
    std::string a_kind, a_in, a_out;
    double a_param = 0.0;
    std::uint64_t a_seed = 0;
    attack->add_option("--kind", a_kind, "jpeg, gauss, or sp")->required();
    attack->add_option("--param", a_param, "QF, variance, or density")->required();
    attack->add_option("--seed", a_seed, "noise seed");
    attack->add_option("--in", a_in, "input image")->required();
    attack->add_option("--out", a_out, "output PGM path")->required();

    // metrics
    auto* metrics = app.add_subcommand("metrics", "compare two images");
    std::string m_a, m_b, m_bits_a, m_bits_b;
    metrics->add_option("--a", m_a, "first image")->required();
    metrics->add_option("--b", m_b, "second image")->required();
    metrics->add_option("--bits-a", m_bits_a, "first bit string (0/1)");
    metrics->add_option("--bits-b", m_bits_b, "second bit string (0/1)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run the benchmark grid");
    std::string s_config, s_out_dir;
    sweep->add_option("--config", s_config, "key=value config file");
    sweep->add_option("--out-dir", s_out_dir, "output directory (overrides config)");

    // plot
    auto* plot = app.add_subcommand("plot", "render SVG charts from a sweep CSV");
    std::string p_csv, p_out_dir = ".";
    plot->add_option("--csv", p_csv, "sweep results CSV")->required();
    plot->add_option("--out-dir", p_out_dir, "output directory");

    // fixtures
    auto* fixtures = app.add_subcommand("fixtures", "write the synthetic test images");
    std::string f_out_dir = "fixtures";
    int f_size = 512;
    fixtures->add_option("--out-dir", f_out_dir, "output directory");
    fixtures->add_option("--size", f_size, "image side length (power of two)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    using namespace graymark;
    try {
        if (*embed) {
            if (e_method != "lsb" && e_method != "dft" && e_method != "hybrid") {
                std::cerr << "unknown method \"" << e_method << "\"\n";
                return 1;
            }
            HybridOrder order;
            if (e_order == "lsb_then_dft")
                order = HybridOrder::lsb_then_dft;
            else if (e_order == "dft_then_lsb")
                order = HybridOrder::dft_then_lsb;
            else {
                std::cerr << "unknown order \"" << e_order << "\"\n";
                return 1;
            }
            const GrayImage img = load_image(e_in);
            const BitStream stream = text_to_stream(e_text);
            GrayImage out;
            if (e_method == "lsb") {
                out = lsb_embed(img, stream);
            } else {
                const CoordinatePlan plan =
                    plan_coords(img, e_plan.seed, stream.size(), e_plan.band(), e_plan.mag_floor);
                out = e_method == "dft" ? dft_embed(img, stream, e_alpha, plan)
                                        : hybrid_embed(img, stream, e_alpha, plan, order);
            }
            save_image(out, e_out);
            std::cout << "bits: " << stream.size() << "\n";
            std::cout << "psnr: " << graymark::detail::format_real(psnr(img, out)) << "\n";
        } else if (*extract) {
            if (x_method != "lsb" && x_method != "dft" && x_method != "hybrid") {
                std::cerr << "unknown method \"" << x_method << "\"\n";
                return 1;
            }
            if (x_method != "lsb" && x_original.empty()) {
                std::cerr << "--original is required for non-blind extraction with --method "
                          << x_method << "\n";
                return 1;
            }
            const GrayImage img = load_image(x_in);
            GrayImage original;
            CoordinatePlan plan;
            if (x_method != "lsb")
                original = load_image(x_original);

            if (x_has_reference) {
                const BitStream reference = text_to_stream(x_reference);
                BitStream extracted;
                std::string path;
                if (x_method == "lsb") {
                    extracted = lsb_extract_n(img, reference.size());
                } else {
                    plan = plan_coords(original, x_plan.seed, reference.size(), x_plan.band(),
                                       x_plan.mag_floor);
                    if (x_method == "dft") {
                        extracted = dft_extract(img, original, plan);
                    } else {
                        const ExtractionReport report =
                            hybrid_extract(img, original, plan, reference, x_threshold);
                        extracted = report.stream;
                        path = report.path == ExtractionPath::dft ? "dft" : "lsb_fallback";
                    }
                }
                std::cout << printable_or_note(extracted) << "\n";
                std::cout << "nc: " << graymark::detail::format_real(nc(reference, extracted))
                          << "\n";
                std::cout << "ber: " << graymark::detail::format_real(ber(reference, extracted))
                          << "\n";
                if (!path.empty())
                    std::cout << "path: " << path << "\n";
            } else {
                if (x_method == "lsb") {
                    std::cout << stream_to_text(lsb_extract(img)) << "\n";
                } else if (x_method == "dft") {
                    std::cout << stream_to_text(two_phase_dft_extract(img, original, x_plan))
                              << "\n";
                } else {
                    // No reference to score the frequency layer against, so
                    // trust it only when its header structure checks out.
                    std::string path = "dft";
                    BitStream stream;
                    try {
                        stream = two_phase_dft_extract(img, original, x_plan);
                    } catch (const Error&) {
                        path = "lsb_fallback";
                    }
                    if (path == "dft" && !validate_header(stream))
                        path = "lsb_fallback";
                    if (path == "lsb_fallback")
                        stream = lsb_extract(img);
                    std::cout << stream_to_text(stream) << "\n";
                    std::cout << "path: " << path << "\n";
                }
            }
        } else if (*attack) {
            AttackSpec spec = parse_attack_token(a_kind + ":" + std::to_string(a_param));
            spec.seed = a_seed;
            save_image(apply_attack(load_image(a_in), spec), a_out);
        } else if (*metrics) {
            const GrayImage a = load_image(m_a);
            const GrayImage b = load_image(m_b);
            std::cout << "mse: " << graymark::detail::format_real(mse(a, b)) << "\n";
            std::cout << "psnr: " << graymark::detail::format_real(psnr(a, b)) << "\n";
            if (!m_bits_a.empty() || !m_bits_b.empty()) {
                const BitStream bits_a = parse_bits(m_bits_a);
                const BitStream bits_b = parse_bits(m_bits_b);
                std::cout << "nc: " << graymark::detail::format_real(nc(bits_a, bits_b)) << "\n";
                std::cout << "ber: " << graymark::detail::format_real(ber(bits_a, bits_b)) << "\n";
            }
        } else if (*sweep) {
            SweepConfig cfg = s_config.empty() ? default_sweep_config() : load_config(s_config);
            if (!s_out_dir.empty())
                cfg.out_dir = s_out_dir;
            std::filesystem::create_directories(cfg.out_dir);
            const std::vector<TrialRecord> records = run_sweep(cfg);
            const std::string csv_path = cfg.out_dir + "/results.csv";
            emit_csv(records, csv_path, {"graymark sweep", config_comment(cfg)});
            std::cout << "wrote " << records.size() << " records to " << csv_path << "\n";
        } else if (*plot) {
            std::filesystem::create_directories(p_out_dir);
            emit_plots(parse_csv(p_csv), p_out_dir);
            std::cout << "wrote plots to " << p_out_dir << "\n";
        } else if (*fixtures) {
            std::filesystem::create_directories(f_out_dir);
            for (const std::string& name : fixture_names()) {
                const std::string path = f_out_dir + "/" + name + ".pgm";
                save_image(make_fixture(name, f_size, f_size), path);
                std::cout << path << "\n";
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
