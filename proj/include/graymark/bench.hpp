#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "graymark/attacks.hpp"
#include "graymark/bitstream.hpp"
#include "graymark/dft.hpp"
#include "graymark/errors.hpp"
#include "graymark/hybrid.hpp"
#include "graymark/lsb.hpp"
#include "graymark/metrics.hpp"
#include "graymark/raster.hpp"
#include "graymark/rng.hpp"

namespace graymark {

// Experiment harness: runs the method x image x attack factorial, persists
// results as CSV, and renders summary SVG charts. Everything is seeded, so a
// sweep is a pure function of its configuration.

struct SweepConfig {
    std::vector<std::string> images;
    std::vector<std::string> methods = {"lsb", "dft", "hybrid"};
    std::string text = "document";
    double alpha = kDefaultAlpha;
    std::uint64_t seed = kDefaultSeed;
    Band band;
    double mag_floor = kDefaultMagFloor;
    HybridOrder order = HybridOrder::dft_then_lsb;
    double threshold = kDefaultFallbackThreshold;
    std::vector<AttackSpec> attacks;
    std::string out_dir = "out";
};

struct TrialRecord {
    std::string image;
    std::string method;
    std::string attack; // "none" for the embed record
    double param = 0.0;
    double psnr_embed = 0.0;
    double nc = 0.0;
    double ber = 0.0;
    std::string path = "-"; // hybrid extraction path, "error" for failed trials
    double ms = 0.0;        // kept zero: records must be byte-stable across runs
    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

inline constexpr std::string_view kCsvHeader = "image,method,attack,param,psnr_embed,nc,ber,path,ms";

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_list(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t end = s.find(sep, start);
        if (end == std::string_view::npos) {
            parts.push_back(trim(s.substr(start)));
            break;
        }
        parts.push_back(trim(s.substr(start, end - start)));
        start = end + 1;
    }
    while (!parts.empty() && parts.back().empty())
        parts.pop_back();
    return parts;
}

inline std::string format_real(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

inline double parse_real(const std::string& s) {
    if (s == "inf")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf")
        return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
        throw FormatError("bad numeric field \"" + s + "\"");
    return v;
}

inline std::string image_stem(std::string_view path) {
    const std::size_t slash = path.find_last_of("/\\");
    std::string_view base = slash == std::string_view::npos ? path : path.substr(slash + 1);
    const std::size_t dot = base.find_last_of('.');
    if (dot != std::string_view::npos && dot > 0)
        base = base.substr(0, dot);
    return std::string(base);
}

} // namespace detail

inline std::string hybrid_order_name(HybridOrder order) {
    return order == HybridOrder::lsb_then_dft ? "lsb_then_dft" : "dft_then_lsb";
}

inline AttackSpec parse_attack_token(const std::string& token) {
    const std::size_t colon = token.find(':');
    if (colon == std::string::npos)
        throw ConfigError("attack \"" + token + "\" is not kind:parameter");
    const std::string kind = detail::trim(token.substr(0, colon));
    const std::string value = detail::trim(token.substr(colon + 1));
    AttackSpec spec;
    if (kind == "jpeg")
        spec.kind = AttackKind::jpeg;
    else if (kind == "gauss")
        spec.kind = AttackKind::gaussian;
    else if (kind == "sp")
        spec.kind = AttackKind::saltpepper;
    else
        throw ConfigError("unknown attack kind \"" + kind + "\"");
    try {
        spec.parameter = detail::parse_real(value);
    } catch (const std::exception&) {
        throw ConfigError("bad attack parameter \"" + value + "\"");
    }
    return spec;
}

inline void validate_config(const SweepConfig& cfg) {
    if (cfg.images.empty())
        throw ConfigError("no images configured");
    if (cfg.methods.empty())
        throw ConfigError("no methods configured");
    for (const std::string& m : cfg.methods)
        if (m != "lsb" && m != "dft" && m != "hybrid")
            throw ConfigError("unknown method \"" + m + "\"");
    if (!(cfg.alpha > 0.0) || !(cfg.alpha < 1.0))
        throw ConfigError("alpha must lie in (0, 1)");
    if (!(cfg.band.inner > 0.0) || !(cfg.band.outer > cfg.band.inner) || cfg.band.outer > 0.5)
        throw ConfigError("band must satisfy 0 < inner < outer <= 0.5");
    if (cfg.mag_floor < 0.0)
        throw ConfigError("mag_floor must be non-negative");
    if (cfg.threshold < 0.0 || cfg.threshold > 1.0)
        throw ConfigError("threshold must lie in [0, 1]");
    try {
        text_to_stream(cfg.text);
    } catch (const Error& e) {
        throw ConfigError(std::string("bad watermark text: ") + e.what());
    }
    for (const AttackSpec& a : cfg.attacks) {
        switch (a.kind) {
            case AttackKind::jpeg: {
                const double rounded = std::floor(a.parameter + 0.5);
                if (std::abs(a.parameter - rounded) > 1e-9 || rounded < 1 || rounded > 100)
                    throw ConfigError("jpeg quality must be an integer in [1, 100]");
                break;
            }
            case AttackKind::gaussian:
                if (a.parameter < 0.0)
                    throw ConfigError("gauss variance must be non-negative");
                break;
            case AttackKind::saltpepper:
                if (a.parameter < 0.0 || a.parameter > 1.0)
                    throw ConfigError("sp density must lie in [0, 1]");
                break;
        }
    }
}

// The experiment grid: three methods over the full attack factorial at the
// default embedding parameters. mag_floor is set well above the uint8
// quantization noise floor of a 512x512 spectrum so the planner only selects
// coefficients strong enough to carry a +-10% modulation through the grid.
inline SweepConfig default_sweep_config() {
    SweepConfig cfg;
    cfg.images = {"fixtures/gradient.pgm", "fixtures/checker.pgm", "fixtures/texture.pgm"};
    cfg.mag_floor = 900.0;
    for (int qf : {90, 70, 50, 30, 20})
        cfg.attacks.push_back({AttackKind::jpeg, static_cast<double>(qf), 0});
    for (double var : {0.001, 0.005, 0.01, 0.02})
        cfg.attacks.push_back({AttackKind::gaussian, var, 0});
    for (double density : {0.01, 0.05, 0.10, 0.15})
        cfg.attacks.push_back({AttackKind::saltpepper, density, 0});
    return cfg;
}

// Flat key=value format, # comments, lists comma-separated. Unknown keys are
// rejected so typos cannot silently fall back to defaults.
inline SweepConfig parse_config(const std::string& content) {
    SweepConfig cfg = default_sweep_config();
    std::istringstream in(content);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped[0] == '#')
            continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        try {
            if (key == "images") {
                cfg.images = detail::split_list(value, ',');
            } else if (key == "methods") {
                cfg.methods = detail::split_list(value, ',');
            } else if (key == "text") {
                cfg.text = value;
            } else if (key == "alpha") {
                cfg.alpha = detail::parse_real(value);
            } else if (key == "seed") {
                cfg.seed = std::stoull(value);
            } else if (key == "band_inner") {
                cfg.band.inner = detail::parse_real(value);
            } else if (key == "band_outer") {
                cfg.band.outer = detail::parse_real(value);
            } else if (key == "mag_floor") {
                cfg.mag_floor = detail::parse_real(value);
            } else if (key == "order") {
                if (value == "lsb_then_dft")
                    cfg.order = HybridOrder::lsb_then_dft;
                else if (value == "dft_then_lsb")
                    cfg.order = HybridOrder::dft_then_lsb;
                else
                    throw ConfigError("unknown order \"" + value + "\"");
            } else if (key == "threshold") {
                cfg.threshold = detail::parse_real(value);
            } else if (key == "attacks") {
                cfg.attacks.clear();
                for (const std::string& token : detail::split_list(value, ','))
                    cfg.attacks.push_back(parse_attack_token(token));
            } else if (key == "out_dir") {
                cfg.out_dir = value;
            } else {
                throw ConfigError("unknown key \"" + key + "\"");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(line_no) + ": bad value for " + key);
        }
    }
    validate_config(cfg);
    return cfg;
}

inline SweepConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// Attack noise seeds depend on (config seed, image, attack point) but never
// on the method, so every method faces the same noise realization.
inline std::uint64_t trial_seed(std::uint64_t config_seed, std::string_view image_id,
                                const AttackSpec& attack) {
    std::string key = std::to_string(config_seed);
    key += '|';
    key += image_id;
    key += '|';
    key += attack_kind_name(attack.kind);
    key += ':';
    key += detail::format_real(attack.parameter);
    return fnv1a64(key);
}

namespace detail {

inline bool record_order(const TrialRecord& a, const TrialRecord& b) {
    if (a.image != b.image) return a.image < b.image;
    if (a.method != b.method) return a.method < b.method;
    if (a.attack != b.attack) return a.attack < b.attack;
    return a.param < b.param;
}

struct MethodRun {
    GrayImage watermarked{1, 1};
    double psnr_embed = 0.0;
    bool ok = false;
};

} // namespace detail

inline std::vector<TrialRecord> run_sweep(const SweepConfig& cfg) {
    validate_config(cfg);
    const BitStream reference = text_to_stream(cfg.text);
    const bool wants_plan =
        std::any_of(cfg.methods.begin(), cfg.methods.end(),
                    [](const std::string& m) { return m == "dft" || m == "hybrid"; });

    std::vector<TrialRecord> records;
    for (const std::string& path : cfg.images) {
        const std::string id = detail::image_stem(path);
        GrayImage original = load_image(path);
        if (original.width != 512 || original.height != 512)
            original = resize_nn(original, 512, 512);

        CoordinatePlan plan;
        std::string plan_error;
        if (wants_plan) {
            try {
                plan = plan_coords(original, cfg.seed, reference.size(), cfg.band, cfg.mag_floor);
            } catch (const Error& e) {
                plan_error = e.what();
            }
        }

        for (const std::string& method : cfg.methods) {
            const bool uses_plan = method != "lsb";
            if (uses_plan && !plan_error.empty()) {
                records.push_back({id, method, "none", 0.0, 0.0, 0.0, 1.0, "error", 0.0});
                continue;
            }

            detail::MethodRun run;
            try {
                if (method == "lsb")
                    run.watermarked = lsb_embed(original, reference);
                else if (method == "dft")
                    run.watermarked = dft_embed(original, reference, cfg.alpha, plan);
                else
                    run.watermarked = hybrid_embed(original, reference, cfg.alpha, plan, cfg.order);
                run.psnr_embed = psnr(original, run.watermarked);
                run.ok = true;
            } catch (const Error&) {
                records.push_back({id, method, "none", 0.0, 0.0, 0.0, 1.0, "error", 0.0});
                continue;
            }

            // Attacked extraction reads a fixed-length stream: headers do not
            // survive attacks, and the experiment always knows the reference.
            const auto extract = [&](const GrayImage& img) {
                TrialRecord r;
                if (method == "lsb") {
                    r.nc = nc(reference, lsb_extract_n(img, reference.size()));
                } else if (method == "dft") {
                    r.nc = nc(reference, dft_extract(img, original, plan));
                } else {
                    const ExtractionReport report =
                        hybrid_extract(img, original, plan, reference, cfg.threshold);
                    r.nc = nc(reference, report.stream);
                    r.path = report.path == ExtractionPath::dft ? "dft" : "lsb_fallback";
                }
                r.ber = 1.0 - r.nc;
                return r;
            };

            TrialRecord embed_rec = extract(run.watermarked);
            embed_rec.image = id;
            embed_rec.method = method;
            embed_rec.attack = "none";
            embed_rec.psnr_embed = run.psnr_embed;
            records.push_back(embed_rec);

            for (const AttackSpec& attack : cfg.attacks) {
                AttackSpec seeded = attack;
                seeded.seed = trial_seed(cfg.seed, id, attack);
                TrialRecord rec;
                try {
                    rec = extract(apply_attack(run.watermarked, seeded));
                } catch (const Error&) {
                    rec.nc = 0.0;
                    rec.ber = 1.0;
                    rec.path = "error";
                }
                rec.image = id;
                rec.method = method;
                rec.attack = attack_kind_name(attack.kind);
                rec.param = attack.parameter;
                rec.psnr_embed = run.psnr_embed;
                records.push_back(rec);
            }
        }
    }
    std::sort(records.begin(), records.end(), detail::record_order);
    return records;
}

inline std::string config_comment(const SweepConfig& cfg) {
    std::string s = "text=" + cfg.text;
    s += " bits=" + std::to_string(text_to_stream(cfg.text).size());
    s += " alpha=" + detail::format_real(cfg.alpha);
    s += " seed=" + std::to_string(cfg.seed);
    s += " band=" + detail::format_real(cfg.band.inner) + ":" + detail::format_real(cfg.band.outer);
    s += " mag_floor=" + detail::format_real(cfg.mag_floor);
    s += " order=" + hybrid_order_name(cfg.order);
    s += " threshold=" + detail::format_real(cfg.threshold);
    return s;
}

inline std::string csv_string(const std::vector<TrialRecord>& records,
                              const std::vector<std::string>& comments = {}) {
    std::string out;
    for (const std::string& c : comments)
        out += "# " + c + "\n";
    out += kCsvHeader;
    out += "\n";
    for (const TrialRecord& r : records) {
        out += r.image;
        out += ',';
        out += r.method;
        out += ',';
        out += r.attack;
        out += ',';
        out += detail::format_real(r.param);
        out += ',';
        out += detail::format_real(r.psnr_embed);
        out += ',';
        out += detail::format_real(r.nc);
        out += ',';
        out += detail::format_real(r.ber);
        out += ',';
        out += r.path;
        out += ',';
        out += detail::format_real(r.ms);
        out += '\n';
    }
    return out;
}

inline void emit_csv(const std::vector<TrialRecord>& records, const std::string& path,
                     const std::vector<std::string>& comments = {}) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    const std::string body = csv_string(records, comments);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out)
        throw IoError("write failed for " + path);
}

inline std::vector<TrialRecord> parse_csv_string(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    bool saw_header = false;
    std::vector<TrialRecord> records;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        if (!saw_header) {
            if (line != kCsvHeader)
                throw FormatError("unexpected CSV header");
            saw_header = true;
            continue;
        }
        const std::vector<std::string> fields = detail::split_list(line, ',');
        if (fields.size() != 9)
            throw FormatError("expected 9 CSV fields, got " + std::to_string(fields.size()));
        TrialRecord r;
        r.image = fields[0];
        r.method = fields[1];
        r.attack = fields[2];
        r.param = detail::parse_real(fields[3]);
        r.psnr_embed = detail::parse_real(fields[4]);
        r.nc = detail::parse_real(fields[5]);
        r.ber = detail::parse_real(fields[6]);
        r.path = fields[7];
        r.ms = detail::parse_real(fields[8]);
        records.push_back(std::move(r));
    }
    if (!saw_header)
        throw FormatError("CSV has no header row");
    return records;
}

inline std::vector<TrialRecord> parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv_string(buf.str());
}

// --- SVG rendering ---------------------------------------------------------

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string method_color(const std::string& method) {
    if (method == "lsb") return "#4472c4";
    if (method == "dft") return "#ed7d31";
    if (method == "hybrid") return "#70ad47";
    return "#999999";
}

inline std::vector<std::string> present_methods(const std::vector<TrialRecord>& records) {
    std::vector<std::string> order = {"lsb", "dft", "hybrid"};
    std::vector<std::string> out;
    for (const std::string& m : order)
        for (const TrialRecord& r : records)
            if (r.method == m) {
                out.push_back(m);
                break;
            }
    for (const TrialRecord& r : records)
        if (std::find(out.begin(), out.end(), r.method) == out.end())
            out.push_back(r.method);
    return out;
}

struct ChartFrame {
    double left = 70, right = 620, top = 50, bottom = 340;
    double width() const { return right - left; }
    double height() const { return bottom - top; }
    double x_at(std::size_t i, std::size_t n) const {
        return left + width() * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    }
    double y_at(double v, double v_max) const {
        return bottom - height() * (v / v_max);
    }
};

inline std::string svg_header(const std::string& title) {
    std::string s =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
        "viewBox=\"0 0 640 400\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"640\" height=\"400\" fill=\"#ffffff\"/>\n";
    s += "<text x=\"70\" y=\"26\" font-size=\"15\" font-weight=\"bold\" fill=\"#222\">" + title +
         "</text>\n";
    return s;
}

inline std::string svg_axes(const ChartFrame& f, double y_max, int y_ticks,
                            const std::string& y_label) {
    std::string s;
    for (int t = 0; t <= y_ticks; ++t) {
        const double v = y_max * t / y_ticks;
        const double y = f.y_at(v, y_max);
        s += "<line x1=\"" + svg_num(f.left) + "\" y1=\"" + svg_num(y) + "\" x2=\"" +
             svg_num(f.right) + "\" y2=\"" + svg_num(y) + "\" stroke=\"#dddddd\"/>\n";
        char label[32];
        std::snprintf(label, sizeof(label), "%g", v);
        s += "<text x=\"" + svg_num(f.left - 8) + "\" y=\"" + svg_num(y + 4) +
             "\" text-anchor=\"end\" fill=\"#444\">" + label + "</text>\n";
    }
    s += "<line x1=\"" + svg_num(f.left) + "\" y1=\"" + svg_num(f.top) + "\" x2=\"" +
         svg_num(f.left) + "\" y2=\"" + svg_num(f.bottom) + "\" stroke=\"#333333\"/>\n";
    s += "<line x1=\"" + svg_num(f.left) + "\" y1=\"" + svg_num(f.bottom) + "\" x2=\"" +
         svg_num(f.right) + "\" y2=\"" + svg_num(f.bottom) + "\" stroke=\"#333333\"/>\n";
    s += "<text x=\"16\" y=\"" + svg_num((f.top + f.bottom) / 2) +
         "\" transform=\"rotate(-90 16 " + svg_num((f.top + f.bottom) / 2) +
         ")\" text-anchor=\"middle\" fill=\"#444\">" + y_label + "</text>\n";
    return s;
}

inline std::string svg_legend(const std::vector<std::string>& methods) {
    std::string s;
    double x = 620 - 80.0 * static_cast<double>(methods.size());
    for (const std::string& m : methods) {
        s += "<rect x=\"" + svg_num(x) + "\" y=\"14\" width=\"12\" height=\"12\" fill=\"" +
             method_color(m) + "\"/>\n";
        s += "<text x=\"" + svg_num(x + 16) + "\" y=\"24\" fill=\"#222\">" + m + "</text>\n";
        x += 80;
    }
    return s;
}

inline std::string svg_category_labels(const ChartFrame& f,
                                       const std::vector<std::string>& labels,
                                       const std::string& x_label) {
    std::string s;
    for (std::size_t i = 0; i < labels.size(); ++i)
        s += "<text x=\"" + svg_num(f.x_at(i, labels.size())) + "\" y=\"" +
             svg_num(f.bottom + 18) + "\" text-anchor=\"middle\" fill=\"#444\">" + labels[i] +
             "</text>\n";
    s += "<text x=\"" + svg_num((f.left + f.right) / 2) + "\" y=\"" + svg_num(f.bottom + 40) +
         "\" text-anchor=\"middle\" fill=\"#444\">" + x_label + "</text>\n";
    return s;
}

// series: per method, one value per category (NaN = missing).
inline std::string grouped_bar_chart(const std::string& title,
                                     const std::vector<std::string>& categories,
                                     const std::vector<std::string>& methods,
                                     const std::vector<std::vector<double>>& series,
                                     double y_max, int y_ticks, const std::string& y_label,
                                     const std::string& x_label) {
    ChartFrame f;
    std::string s = svg_header(title);
    s += svg_axes(f, y_max, y_ticks, y_label);
    s += svg_legend(methods);
    const double slot = f.width() / static_cast<double>(categories.size());
    const double group = slot * 0.72;
    const double bar = group / static_cast<double>(methods.size());
    for (std::size_t c = 0; c < categories.size(); ++c) {
        const double x0 = f.x_at(c, categories.size()) - group / 2;
        for (std::size_t m = 0; m < methods.size(); ++m) {
            const double v = series[m][c];
            if (std::isnan(v))
                continue;
            const double clipped = std::min(v, y_max);
            const double y = f.y_at(clipped, y_max);
            s += "<rect x=\"" + svg_num(x0 + bar * static_cast<double>(m)) + "\" y=\"" +
                 svg_num(y) + "\" width=\"" + svg_num(bar - 1.5) + "\" height=\"" +
                 svg_num(f.bottom - y) + "\" fill=\"" + method_color(methods[m]) + "\"/>\n";
        }
    }
    s += svg_category_labels(f, categories, x_label);
    s += "</svg>\n";
    return s;
}

inline std::string line_chart(const std::string& title,
                              const std::vector<std::string>& categories,
                              const std::vector<std::string>& methods,
                              const std::vector<std::vector<double>>& series, double y_max,
                              int y_ticks, const std::string& y_label,
                              const std::string& x_label) {
    ChartFrame f;
    std::string s = svg_header(title);
    s += svg_axes(f, y_max, y_ticks, y_label);
    s += svg_legend(methods);
    for (std::size_t m = 0; m < methods.size(); ++m) {
        std::string points;
        for (std::size_t c = 0; c < categories.size(); ++c) {
            const double v = series[m][c];
            if (std::isnan(v))
                continue;
            points += svg_num(f.x_at(c, categories.size())) + "," +
                      svg_num(f.y_at(std::min(v, y_max), y_max)) + " ";
        }
        if (points.empty())
            continue;
        s += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" +
             method_color(methods[m]) + "\" stroke-width=\"2\"/>\n";
        for (std::size_t c = 0; c < categories.size(); ++c) {
            const double v = series[m][c];
            if (std::isnan(v))
                continue;
            s += "<circle cx=\"" + svg_num(f.x_at(c, categories.size())) + "\" cy=\"" +
                 svg_num(f.y_at(std::min(v, y_max), y_max)) + "\" r=\"3\" fill=\"" +
                 method_color(methods[m]) + "\"/>\n";
        }
    }
    s += svg_category_labels(f, categories, x_label);
    s += "</svg>\n";
    return s;
}

inline void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out)
        throw IoError("write failed for " + path);
}

inline std::string param_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Mean NC per (method, parameter) for one attack family, averaged over images.
inline void family_series(const std::vector<TrialRecord>& records, const std::string& family,
                          const std::vector<std::string>& methods, bool descending,
                          std::vector<std::string>& categories,
                          std::vector<std::vector<double>>& series) {
    std::vector<double> params;
    for (const TrialRecord& r : records)
        if (r.attack == family && std::find(params.begin(), params.end(), r.param) == params.end())
            params.push_back(r.param);
    std::sort(params.begin(), params.end());
    if (descending)
        std::reverse(params.begin(), params.end());

    categories.clear();
    for (double p : params)
        categories.push_back(param_label(p));

    series.assign(methods.size(), std::vector<double>(params.size(),
                                                      std::numeric_limits<double>::quiet_NaN()));
    for (std::size_t m = 0; m < methods.size(); ++m) {
        for (std::size_t c = 0; c < params.size(); ++c) {
            double sum = 0.0;
            int count = 0;
            for (const TrialRecord& r : records)
                if (r.attack == family && r.method == methods[m] && r.param == params[c] &&
                    r.path != "error") {
                    sum += r.nc;
                    ++count;
                }
            if (count > 0)
                series[m][c] = sum / count;
        }
    }
}

} // namespace detail

// Renders psnr.svg plus one robustness chart per attack family present in
// the records. Averages are taken over images for each method.
inline void emit_plots(const std::vector<TrialRecord>& records, const std::string& dir) {
    if (records.empty())
        throw ParamError("no records to plot");
    const std::vector<std::string> methods = detail::present_methods(records);

    std::vector<std::string> images;
    for (const TrialRecord& r : records)
        if (std::find(images.begin(), images.end(), r.image) == images.end())
            images.push_back(r.image);
    std::sort(images.begin(), images.end());

    bool have_embed = false;
    double psnr_cap = 0.0;
    std::vector<std::vector<double>> psnr_series(
        methods.size(), std::vector<double>(images.size(), std::numeric_limits<double>::quiet_NaN()));
    for (const TrialRecord& r : records) {
        if (r.attack != "none" || r.path == "error")
            continue;
        const auto mi = std::find(methods.begin(), methods.end(), r.method) - methods.begin();
        const auto ii = std::find(images.begin(), images.end(), r.image) - images.begin();
        psnr_series[static_cast<std::size_t>(mi)][static_cast<std::size_t>(ii)] = r.psnr_embed;
        if (std::isfinite(r.psnr_embed))
            psnr_cap = std::max(psnr_cap, r.psnr_embed);
        have_embed = true;
    }
    if (have_embed) {
        const double y_max = std::max(10.0, std::ceil((psnr_cap + 5.0) / 10.0) * 10.0);
        detail::write_text_file(dir + "/psnr.svg",
                                detail::grouped_bar_chart("Embedding PSNR", images, methods,
                                                          psnr_series, y_max, 5, "PSNR (dB)",
                                                          "image"));
    }

    std::vector<std::string> categories;
    std::vector<std::vector<double>> series;

    detail::family_series(records, "jpeg", methods, true, categories, series);
    if (!categories.empty())
        detail::write_text_file(dir + "/nc_jpeg.svg",
                                detail::line_chart("Robustness vs JPEG compression", categories,
                                                   methods, series, 1.0, 4, "NC",
                                                   "quality factor"));

    detail::family_series(records, "gauss", methods, false, categories, series);
    if (!categories.empty())
        detail::write_text_file(dir + "/nc_gauss.svg",
                                detail::grouped_bar_chart("Robustness vs Gaussian noise",
                                                          categories, methods, series, 1.0, 4,
                                                          "NC", "noise variance"));

    detail::family_series(records, "sp", methods, false, categories, series);
    if (!categories.empty())
        detail::write_text_file(dir + "/nc_sp.svg",
                                detail::grouped_bar_chart("Robustness vs salt & pepper noise",
                                                          categories, methods, series, 1.0, 4,
                                                          "NC", "noise density"));
}

} // namespace graymark
