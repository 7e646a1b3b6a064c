// Command-line front end: sweeps, table reproduction, encoding, warping and
// spectrum analysis. Exit status: 0 ok, 1 golden/congruence mismatch, 2 usage.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "sftp/errors.hpp"
#include "sftp/harness.hpp"
#include "sftp/io.hpp"

namespace fs = std::filesystem;
using sftp::io::json;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

sftp::Interpolation parse_interpolation(const std::string& s) {
    if (s == "bilinear") return sftp::Interpolation::Bilinear;
    if (s == "sum") return sftp::Interpolation::ArithmeticSum;
    throw sftp::InvalidArgument("interpolation must be bilinear or sum");
}

std::optional<sftp::Anchor> parse_anchor(const json& j, int w, int h) {
    if (j.is_null()) return std::nullopt;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "corner") return sftp::Anchor::corner();
        if (s == "center") return sftp::Anchor::center(w, h);
        throw sftp::InvalidArgument("anchor must be corner, center or [x, y]");
    }
    if (j.is_array() && j.size() == 2) return sftp::Anchor{j[0].get<double>(), j[1].get<double>()};
    throw sftp::InvalidArgument("anchor must be corner, center or [x, y]");
}

sftp::SweepConfig sweep_from_json(const json& j, const std::string& interp_flag) {
    auto c = sftp::SweepConfig::standard(sftp::parse_kind(j.at("kind").get<std::string>()));
    c.start = j.value("start", c.start);
    c.stop = j.value("stop", c.stop);
    c.step = j.value("step", c.step);
    if (j.contains("pattern")) c.pattern = sftp::io::pattern_from_json(j.at("pattern"));
    c.interpolation = parse_interpolation(j.value("interpolation", std::string("bilinear")));
    if (!interp_flag.empty()) c.interpolation = parse_interpolation(interp_flag);
    if (j.contains("tiling")) {
        c.tile_x = j.at("tiling").at(0).get<int>();
        c.tile_y = j.at("tiling").at(1).get<int>();
    }
    c.anchor = parse_anchor(j.value("anchor", json()), c.pattern.width, c.pattern.height);
    if (j.contains("fill_value")) c.fill_value = j.at("fill_value").get<double>();
    c.validate();
    return c;
}

json load_json_arg(const std::string& arg) {
    if (fs::exists(arg)) return sftp::io::read_json(arg);
    try {
        return json::parse(arg);
    } catch (const json::parse_error&) {
        throw sftp::InvalidArgument("'" + arg + "' is neither a file nor inline JSON");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial-Fourier transform pair toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", interpolation, input, transform_arg, anchor_arg;
    std::vector<std::string> kinds;
    std::vector<int> tables;
    bool diff_golden = false, dump_images = false;
    int k = 4;

    auto* sweep = app.add_subcommand("sweep", "run coefficient sweeps and write figure CSVs");
    sweep->add_option("--config", config_path, "sweep config JSON (object or {\"sweeps\": [...]})");
    sweep->add_option("--kind", kinds, "standard sweep kind(s); default: all");
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--interpolation", interpolation, "bilinear | sum")->check(CLI::IsMember({"bilinear", "sum"}));
    sweep->add_flag("--diff-golden", diff_golden, "fail when an affine sample is not congruent");
    sweep->add_flag("--dump-images", dump_images, "write a PGM of every simulated sample");

    auto* table = app.add_subcommand("table", "reproduce a reference table (2, 3 or 4)");
    table->add_option("ids", tables, "table ids")->required();
    table->add_option("--out", out_dir, "output directory");
    table->add_option("--interpolation", interpolation, "bilinear | sum")->check(CLI::IsMember({"bilinear", "sum"}));
    table->add_flag("--diff-golden", diff_golden, "compare against the golden values");
    table->add_option("--config", config_path, "unused; accepted for symmetry");

    auto* encode = app.add_subcommand("encode", "encode a peak spec into a spatial image");
    encode->add_option("--config", config_path, "pattern JSON; default: the four-peak 25x25 pattern");
    encode->add_option("--out", out_dir, "output directory");
    encode->add_flag("--dump-images", dump_images, "also write PGM images");

    auto* warp = app.add_subcommand("warp", "apply a perspective transform to an image");
    warp->add_option("--input", input, "image CSV; default: encoded pattern from --config");
    warp->add_option("--config", config_path, "pattern JSON used when --input is absent");
    warp->add_option("--transform", transform_arg, "transform JSON file or inline JSON")->required();
    warp->add_option("--anchor", anchor_arg, "corner | center (default center)");
    warp->add_option("--interpolation", interpolation, "bilinear | sum")->check(CLI::IsMember({"bilinear", "sum"}));
    warp->add_option("--out", out_dir, "output directory");
    warp->add_flag("--dump-images", dump_images, "also write PGM images");

    auto* analyze = app.add_subcommand("analyze", "detect peaks and estimate the transform");
    analyze->add_option("--input", input, "image CSV")->required();
    analyze->add_option("--config", config_path, "reference pattern JSON for estimation");
    analyze->add_option("-k", k, "number of peaks")->check(CLI::PositiveNumber);
    analyze->add_option("--out", out_dir, "output directory");
    analyze->add_flag("--dump-images", dump_images, "write the spectrum display PGM");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kOk : kUsage;
    }

    try {
        if (*sweep) {
            std::vector<sftp::SweepConfig> configs;
            if (!config_path.empty()) {
                const json j = sftp::io::read_json(config_path);
                if (j.contains("sweeps"))
                    for (const auto& s : j.at("sweeps")) configs.push_back(sweep_from_json(s, interpolation));
                else
                    configs.push_back(sweep_from_json(j, interpolation));
            } else {
                std::vector<sftp::SweepKind> ks;
                if (kinds.empty())
                    ks = sftp::all_sweep_kinds();
                else
                    for (const auto& s : kinds) ks.push_back(sftp::parse_kind(s));
                for (auto kind : ks) {
                    auto c = sftp::SweepConfig::standard(kind);
                    if (!interpolation.empty()) c.interpolation = parse_interpolation(interpolation);
                    configs.push_back(c);
                }
            }
            bool all_congruent = true;
            for (const auto& c : configs) {
                const auto records = sftp::run_sweep(c);
                const auto path = sftp::export_figures(c, records, out_dir);
                int congruent = 0;
                for (const auto& r : records) congruent += r.congruent;
                std::cout << sftp::kind_name(c.kind) << ": " << records.size() << " samples -> " << path.string();
                if (sftp::is_affine(c.kind)) {
                    std::cout << "  congruent " << congruent << "/" << records.size();
                    all_congruent = all_congruent && congruent == static_cast<int>(records.size());
                }
                std::cout << '\n';
                if (dump_images)
                    for (int i = 0; i < c.sample_count(); ++i) {
                        const double v = c.sample(i);
                        const auto cap = sftp::simulate_sample(c, v);
                        const std::string stem = sftp::export_name(c.kind) + "_" + sftp::io::fmt6(v);
                        sftp::io::write_pgm(cap.image, fs::path(out_dir) / "images" / (stem + ".pgm"));
                        sftp::io::write_pgm(sftp::spectrum_display(cap.spectrum),
                                            fs::path(out_dir) / "images" / (stem + "_mag.pgm"));
                    }
            }
            return diff_golden && !all_congruent ? kMismatch : kOk;
        }

        if (*table) {
            const auto interp = interpolation.empty() ? sftp::Interpolation::Bilinear : parse_interpolation(interpolation);
            bool ok = true;
            for (int id : tables) {
                const auto res = sftp::reproduce_table(id, interp);
                const std::string text = sftp::format_table(res, diff_golden);
                std::cout << text;
                sftp::io::write_text(fs::path(out_dir) / ("table_" + std::to_string(id) + ".txt"), text);
                ok = ok && res.all_match();
            }
            return diff_golden && !ok ? kMismatch : kOk;
        }

        if (*encode) {
            const auto spec = config_path.empty() ? sftp::default_pattern()
                                                  : sftp::io::pattern_from_json(sftp::io::read_json(config_path));
            const auto img = sftp::encode_peaks(spec);
            sftp::io::write_image_csv(img, fs::path(out_dir) / "pattern.csv");
            sftp::io::write_spectrum_csv(sftp::center_spectrum(sftp::dft_forward(img)),
                                         fs::path(out_dir) / "spectrum.csv");
            if (dump_images) {
                sftp::io::write_pgm(img, fs::path(out_dir) / "pattern.pgm");
                sftp::io::write_pgm(sftp::spectrum_display(sftp::center_spectrum(sftp::dft_forward(img))),
                                    fs::path(out_dir) / "pattern_mag.pgm");
            }
            std::cout << "wrote " << (fs::path(out_dir) / "pattern.csv").string() << '\n';
            return kOk;
        }

        if (*warp) {
            sftp::SpatialImage img;
            if (!input.empty()) {
                img = sftp::io::read_image_csv(input);
            } else {
                img = sftp::encode_peaks(config_path.empty() ? sftp::default_pattern()
                                                             : sftp::io::pattern_from_json(sftp::io::read_json(config_path)));
            }
            const auto a = sftp::io::transform_from_json(load_json_arg(transform_arg));
            const auto interp = interpolation.empty() ? sftp::Interpolation::Bilinear : parse_interpolation(interpolation);
            const auto anchor = parse_anchor(anchor_arg.empty() ? json() : json(anchor_arg), img.width, img.height);
            const auto out = sftp::warp_image(img, a, interp, anchor);
            sftp::io::write_image_csv(out, fs::path(out_dir) / "warped.csv");
            if (dump_images) sftp::io::write_pgm(out, fs::path(out_dir) / "warped.pgm");
            std::cout << "wrote " << (fs::path(out_dir) / "warped.csv").string() << '\n';
            return kOk;
        }

        if (*analyze) {
            const auto img = sftp::io::read_image_csv(input);
            const auto cap = sftp::capture_image(img, k);
            sftp::io::write_detections_csv(cap.detection.peaks, fs::path(out_dir) / "detections.csv");
            for (const auto& d : cap.detection.peaks)
                std::cout << "(" << d.u << ", " << d.v << ") ncc=" << sftp::io::fmt6(d.ncc_score)
                          << " magnitude=" << sftp::io::fmt6(d.magnitude) << '\n';
            if (cap.detection.degraded) std::cout << "warning: fewer than " << k << " peaks found\n";
            if (dump_images) sftp::io::write_pgm(sftp::spectrum_display(cap.spectrum), fs::path(out_dir) / "spectrum.pgm");
            if (!config_path.empty()) {
                const auto spec = sftp::io::pattern_from_json(sftp::io::read_json(config_path));
                std::vector<sftp::UV> before, after;
                std::vector<char> used(cap.detection.peaks.size(), 0);
                for (const auto& p : spec.peaks) {
                    // pair each reference peak with the nearest unused detection
                    int best = -1;
                    double bd = 1e300;
                    for (std::size_t j = 0; j < cap.detection.peaks.size(); ++j) {
                        if (used[j]) continue;
                        const double d = std::hypot(cap.detection.peaks[j].u - p.u, cap.detection.peaks[j].v - p.v);
                        if (d < bd) bd = d, best = static_cast<int>(j);
                    }
                    if (best < 0) break;
                    used[best] = 1;
                    before.emplace_back(p.u, p.v);
                    after.emplace_back(cap.detection.peaks[best].u, cap.detection.peaks[best].v);
                }
                const auto est = sftp::estimate_affine(before, after);
                const json j = sftp::io::estimate_to_json(est);
                sftp::io::write_text(fs::path(out_dir) / "estimate.json", j.dump(2) + "\n");
                std::cout << j.dump() << '\n';
            }
            return kOk;
        }
    } catch (const sftp::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const sftp::OutOfBounds& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
