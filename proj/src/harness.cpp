#include "sftp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sftp/errors.hpp"
#include "sftp/io.hpp"

namespace sftp {

std::string_view golden_tables_json();

namespace {

struct KindInfo {
    SweepKind kind;
    const char* name;
    const char* export_name;
};

constexpr KindInfo kKinds[] = {
    {SweepKind::ScaleX, "scale_x", "Scale_X"},
    {SweepKind::ScaleY, "scale_y", "Scale_Y"},
    {SweepKind::ScaleZ, "scale_z", "Scale_Z"},
    {SweepKind::ScaleXY, "scale_xy", "Scale_XY"},
    {SweepKind::ScaleXYZ, "scale_xyz", "Scale_XYZ"},
    {SweepKind::ShearYX, "shear_yx", "Shear_X"},
    {SweepKind::ShearXY, "shear_xy", "Shear_Y"},
    {SweepKind::ShearXYSym, "shear_xy_sym", "Shear_XY"},
    {SweepKind::Rotation, "rotation", "Rotation"},
    {SweepKind::TranslateX, "translate_x", "Translate_Tx"},
    {SweepKind::TranslateXY, "translate_xy", "Translate_TxTy"},
    {SweepKind::WarpXZ, "warp_xz", "Warp_X"},
    {SweepKind::WarpYZ, "warp_yz", "Warp_Y"},
    {SweepKind::WarpXYZSym, "warp_xyz_sym", "Warp_XY"},
};

const KindInfo& info(SweepKind kind) {
    for (const auto& k : kKinds)
        if (k.kind == kind) return k;
    throw InvalidArgument("unknown sweep kind");
}

std::string peak_label(const FrequencyPeak& p) { return "[" + io::fmt6(p.u) + " " + io::fmt6(p.v) + "]"; }

std::string cell(double x) {
    if (!std::isfinite(x)) return {};
    return io::fmt6(std::abs(x) < 1e-9 ? 0.0 : x);
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

void measure(const ComplexSpectrum& s, int u, int v, double& phase_out, double& mag_out) {
    const Complex z = value_at(s, u, v);
    mag_out = std::abs(z);
    phase_out = mag_out < kPhaseMagnitudeEpsilon ? nan() : phase_of(z);
}

// Translation sweeps run over integer window shifts only.
std::pair<int, int> translation_shift(SweepKind kind, double value) {
    const long t = std::lround(value);
    if (std::abs(value - static_cast<double>(t)) > 1e-9)
        throw InvalidArgument("translation sweeps need integer shifts");
    if (kind == SweepKind::TranslateX) return {static_cast<int>(t), 0};
    return {static_cast<int>(t), static_cast<int>(t)};
}

}  // namespace

const std::vector<SweepKind>& all_sweep_kinds() {
    static const std::vector<SweepKind> kinds = [] {
        std::vector<SweepKind> v;
        for (const auto& k : kKinds) v.push_back(k.kind);
        return v;
    }();
    return kinds;
}

std::string kind_name(SweepKind kind) { return info(kind).name; }
std::string export_name(SweepKind kind) { return info(kind).export_name; }

SweepKind parse_kind(const std::string& name) {
    for (const auto& k : kKinds)
        if (name == k.name || name == k.export_name) return k.kind;
    throw InvalidArgument("unknown sweep kind '" + name + "'");
}

bool is_translation(SweepKind kind) { return kind == SweepKind::TranslateX || kind == SweepKind::TranslateXY; }
bool is_warp(SweepKind kind) {
    return kind == SweepKind::WarpXZ || kind == SweepKind::WarpYZ || kind == SweepKind::WarpXYZSym;
}
bool is_affine(SweepKind kind) { return !is_translation(kind) && !is_warp(kind); }

Anchor default_anchor(SweepKind kind, int width, int height) {
    if (kind == SweepKind::Rotation) return Anchor::center(width, height);
    return Anchor::corner();
}

PerspectiveTransform sweep_transform(SweepKind kind, double value) {
    TransformCoefficients c;
    switch (kind) {
        case SweepKind::ScaleX: c.chi_x = value; break;
        case SweepKind::ScaleY: c.chi_y = value; break;
        case SweepKind::ScaleZ: c.chi_z = value; break;
        case SweepKind::ScaleXY: c.chi_x = c.chi_y = value; break;
        case SweepKind::ScaleXYZ: c.chi_x = c.chi_y = c.chi_z = value; break;
        case SweepKind::ShearYX: c.psi_yx = value; break;
        case SweepKind::ShearXY: c.psi_xy = value; break;
        case SweepKind::ShearXYSym: c.psi_yx = c.psi_xy = value; break;
        case SweepKind::Rotation: return rotation_transform(value);
        case SweepKind::TranslateX: c.tau_x = value; break;
        case SweepKind::TranslateXY: c.tau_x = c.tau_y = value; break;
        case SweepKind::WarpXZ: c.psi_xz = value; break;
        case SweepKind::WarpYZ: c.psi_yz = value; break;
        case SweepKind::WarpXYZSym: c.psi_xz = c.psi_yz = value; break;
    }
    return build_transform(c);
}

SweepConfig SweepConfig::standard(SweepKind kind) {
    SweepConfig c;
    c.kind = kind;
    if (kind == SweepKind::Rotation) {
        c.start = 0.0, c.stop = 360.0, c.step = 1.0;
    } else if (is_translation(kind)) {
        c.start = 0.0, c.stop = 25.0, c.step = 1.0;
    } else if (is_warp(kind)) {
        c.start = 0.0, c.stop = 0.01, c.step = 0.00005;
    } else if (kind == SweepKind::ShearYX || kind == SweepKind::ShearXY || kind == SweepKind::ShearXYSym) {
        c.start = 0.002, c.stop = 0.3, c.step = 0.002;
    } else {
        c.start = 0.75, c.stop = 1.25, c.step = 0.005;
    }
    return c;
}

void SweepConfig::validate() const {
    if (!(step > 0.0)) throw InvalidArgument("sweep step must be positive");
    if (!(stop >= start)) throw InvalidArgument("sweep stop must not precede start");
    if (tile_x <= 0 || tile_y <= 0) throw InvalidArgument("tiling must be positive");
    pattern.validate();
}

int SweepConfig::sample_count() const {
    return static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
}

double SweepConfig::sample(int i) const {
    // Computed from the index so values carry no accumulated drift.
    const double x = start + i * step;
    return std::nearbyint(x * 1e12) / 1e12;
}

Capture capture_image(const SpatialImage& image, int k) {
    Capture c;
    c.image = image;
    c.spectrum = center_spectrum(dft_forward(image));
    c.magnitude = magnitude(c.spectrum);
    c.detection = detect_peaks(c.magnitude, k);
    return c;
}

Capture simulate_sample(const SweepConfig& config, double value) {
    SpatialImage base = encode_peaks(config.pattern);
    if (config.fill_value) base.fill_value = *config.fill_value;
    const int k = static_cast<int>(config.pattern.peaks.size());
    if (is_translation(config.kind)) {
        const auto [tx, ty] = translation_shift(config.kind, value);
        const auto [ox, oy] = window_offset_pixels(tx, ty);
        const SpatialImage tiled = tile_periodic(base, config.tile_x, config.tile_y);
        const int x0 = base.width * (config.tile_x / 2) + ox;
        const int y0 = base.height * (config.tile_y / 2) + oy;
        return capture_image(crop_window(tiled, x0, y0, base.width, base.height), k);
    }
    const Anchor anchor = config.anchor.value_or(default_anchor(config.kind, base.width, base.height));
    return capture_image(warp_image(base, sweep_transform(config.kind, value), config.interpolation, anchor), k);
}

SweepRecord run_sample(const SweepConfig& config, double value) {
    const Capture cap = simulate_sample(config, value);
    const PatternSpec& pat = config.pattern;
    const int M = pat.width;
    const int N = pat.height;
    SweepRecord rec;
    rec.coefficient = value;
    rec.detections = cap.detection.peaks;
    rec.degraded = cap.detection.degraded;

    const PerspectiveTransform a = is_translation(config.kind) ? PerspectiveTransform() : sweep_transform(config.kind, value);
    const Anchor anchor = config.anchor.value_or(default_anchor(config.kind, M, N));
    const double warp_x = (M - 1) / 2.0 - anchor.x;
    const double warp_y = (N - 1) / 2.0 - anchor.y;

    for (const auto& base : pat.peaks) {
        PeakRecord pr;
        pr.base = base;
        if (is_affine(config.kind)) {
            const PeakPrediction p = predict_peak(build_frequency_map(a, M, N), base);
            pr.predicted_u = p.peak.u;
            pr.predicted_v = p.peak.v;
            pr.aliased = p.aliased;
            pr.predicted_phase = p.peak.phase_deg;
            pr.predicted_magnitude = p.peak.amplitude;
        } else if (is_warp(config.kind)) {
            const FrequencyPeak p = predict_warp(a.psi_xz(), a.psi_yz(), base, warp_x, warp_y);
            pr.predicted_u = p.u;
            pr.predicted_v = p.v;
            pr.aliased = !cartesian_in_bounds(M, N, p.u, p.v);
            pr.predicted_phase = p.phase_deg;
            pr.predicted_magnitude = p.amplitude;
        } else {
            const auto [tx, ty] = translation_shift(config.kind, value);
            pr.predicted_u = base.u;
            pr.predicted_v = base.v;
            pr.predicted_phase = wrap_degrees(base.phase_deg + predict_translation_phase(tx, ty, M, N, base.u, base.v));
            pr.predicted_magnitude = base.amplitude;
        }
        pr.binned = bin_peak(pr.predicted_u, pr.predicted_v);
        measure(cap.spectrum, static_cast<int>(base.u), static_cast<int>(base.v), pr.initial_phase,
                pr.initial_magnitude);
        pr.captured_phase = nan();
        pr.captured_magnitude = nan();
        rec.peaks.push_back(pr);
    }

    // Pair detections with peaks, closest first. Affine runs pair against the
    // prediction; warp and translation runs against the encoded bin.
    struct Pair {
        double dist;
        std::size_t peak, det;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < rec.peaks.size(); ++i) {
        const auto& pr = rec.peaks[i];
        const double tu = is_affine(config.kind) ? pr.predicted_u : pr.base.u;
        const double tv = is_affine(config.kind) ? pr.predicted_v : pr.base.v;
        for (std::size_t j = 0; j < rec.detections.size(); ++j)
            pairs.push_back({std::hypot(rec.detections[j].u - tu, rec.detections[j].v - tv), i, j});
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.dist < y.dist; });
    std::vector<char> peak_used(rec.peaks.size(), 0), det_used(rec.detections.size(), 0);
    for (const auto& p : pairs) {
        if (peak_used[p.peak] || det_used[p.det]) continue;
        peak_used[p.peak] = det_used[p.det] = 1;
        auto& pr = rec.peaks[p.peak];
        pr.captured = true;
        pr.capture = {rec.detections[p.det].u, rec.detections[p.det].v};
        measure(cap.spectrum, pr.capture.u, pr.capture.v, pr.captured_phase, pr.captured_magnitude);
    }

    std::vector<BinnedPeak> predicted, captured;
    for (const auto& pr : rec.peaks) predicted.push_back(pr.binned);
    for (const auto& d : rec.detections) captured.push_back({d.u, d.v});
    std::sort(predicted.begin(), predicted.end());
    std::sort(captured.begin(), captured.end());
    rec.congruent = !rec.degraded && predicted == captured;
    return rec;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    config.validate();
    std::vector<SweepRecord> out;
    const int n = config.sample_count();
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(run_sample(config, config.sample(i)));
    return out;
}

std::string sweep_csv(const SweepConfig& config, const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    const auto& peaks = config.pattern.peaks;
    const SweepKind kind = config.kind;
    std::vector<std::string> header{export_name(kind)};
    for (const auto& p : peaks) {
        const std::string l = peak_label(p);
        if (is_affine(kind)) {
            for (const char* c : {"Mag_X", "Mag_Y", "Est_Xi", "Est_Yi", "Est_Xd", "Est_Yd"}) header.push_back(c + l);
        } else if (is_translation(kind)) {
            for (const char* c : {"Filt_PhaseCalc", "Est_EstPhaseCalc", "Filt_MagVal", "Est_EstMagCalc"})
                header.push_back(c + l);
        } else {
            for (const char* c : {"Mag_X", "Mag_Y", "Mag_PhaseCalc", "Mag_MagVal", "Initial_PhaseCalc",
                                  "Initial_MagVal", "Est_Xd", "Est_Yd", "Est_Xi", "Est_Yi", "Est_EstPhaseCalc",
                                  "Est_EstMagCalc"})
                header.push_back(c + l);
        }
    }
    if (is_affine(kind)) header.push_back("Congruent");
    header.push_back("Degraded");
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';

    for (const auto& r : records) {
        std::vector<std::string> row{io::fmt6(r.coefficient)};
        for (const auto& p : r.peaks) {
            const double cu = p.captured ? p.capture.u : nan();
            const double cv = p.captured ? p.capture.v : nan();
            if (is_affine(kind)) {
                for (double x : {cu, cv, static_cast<double>(p.binned.u), static_cast<double>(p.binned.v),
                                 p.predicted_u, p.predicted_v})
                    row.push_back(cell(x));
            } else if (is_translation(kind)) {
                for (double x : {p.initial_phase, p.predicted_phase, p.initial_magnitude, p.predicted_magnitude})
                    row.push_back(cell(x));
            } else {
                for (double x : {cu, cv, p.captured_phase, p.captured_magnitude, p.initial_phase, p.initial_magnitude,
                                 p.predicted_u, p.predicted_v, static_cast<double>(p.binned.u),
                                 static_cast<double>(p.binned.v), p.predicted_phase, p.predicted_magnitude})
                    row.push_back(cell(x));
            }
        }
        if (is_affine(kind)) row.push_back(r.congruent ? "1" : "0");
        row.push_back(r.degraded ? "1" : "0");
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

std::filesystem::path export_figures(const SweepConfig& config, const std::vector<SweepRecord>& records,
                                     const std::filesystem::path& out_dir) {
    const auto path = out_dir / (export_name(config.kind) + ".csv");
    io::write_text(path, sweep_csv(config, records));
    return path;
}

bool TableResult::all_match() const {
    return std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.captured_match && r.calculated_match; });
}

std::vector<int> table_ids() { return {2, 3, 4}; }

bool calculated_matches(const std::vector<std::pair<double, double>>& predicted,
                        const std::vector<std::pair<double, double>>& printed, double tol) {
    if (predicted.size() != printed.size()) return false;
    auto ok = [tol](const std::pair<double, double>& p, const std::pair<double, double>& g) {
        if (std::abs(p.first - g.first) <= tol && std::abs(p.second - g.second) <= tol) return true;
        const bool integral = g.first == std::floor(g.first) && g.second == std::floor(g.second);
        return integral && bin_peak(p.first, p.second) == BinnedPeak{static_cast<int>(g.first), static_cast<int>(g.second)};
    };
    std::vector<std::size_t> perm(printed.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool all = true;
        for (std::size_t i = 0; i < perm.size() && all; ++i) all = ok(predicted[i], printed[perm[i]]);
        if (all) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

TableResult reproduce_table(int table_id, Interpolation interpolation) {
    const auto golden = io::json::parse(golden_tables_json());
    const std::string key = std::to_string(table_id);
    if (!golden.contains(key)) throw InvalidArgument("no table " + key + "; expected 2, 3 or 4");
    const auto& t = golden.at(key);
    TableResult res;
    res.id = table_id;
    res.title = t.at("title").get<std::string>();
    for (const auto& row : t.at("rows")) {
        TableRow tr;
        tr.label = row.at("label").get<std::string>();
        tr.kind = parse_kind(row.at("kind").get<std::string>());
        tr.value = row.at("value").get<double>();
        tr.golden_estimated = row.at("estimated").get<std::string>();
        for (const auto& p : row.at("captured")) tr.golden_captured.push_back({p[0].get<int>(), p[1].get<int>()});
        for (const auto& p : row.at("calculated")) tr.golden_calculated.emplace_back(p[0].get<double>(), p[1].get<double>());

        SweepConfig cfg = SweepConfig::standard(tr.kind);
        cfg.interpolation = interpolation;
        const Capture cap = simulate_sample(cfg, tr.value);
        for (const auto& d : cap.detection.peaks) tr.captured.push_back({d.u, d.v});

        // Calculated points come from the general frequency map for every row,
        // warp rows included.
        const FrequencyMap map = build_frequency_map(sweep_transform(tr.kind, tr.value), cfg.pattern.width,
                                                     cfg.pattern.height);
        std::vector<UV> before, after;
        for (const auto& p : cfg.pattern.peaks) {
            const auto uv = map.map(p.u, p.v);
            tr.calculated.emplace_back(uv.x(), uv.y());
            before.emplace_back(p.u, p.v);
        }

        auto a = tr.captured, b = tr.golden_captured;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        tr.captured_match = a == b;
        tr.calculated_match = calculated_matches(tr.calculated, tr.golden_calculated);

        // Estimated column: fit the captured set against the encoded peaks,
        // each encoded peak paired with the nearest unused capture.
        if (tr.captured.size() == before.size()) {
            std::vector<char> used(tr.captured.size(), 0);
            for (std::size_t i = 0; i < before.size(); ++i) {
                std::size_t best = 0;
                double bd = std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < tr.captured.size(); ++j) {
                    if (used[j]) continue;
                    const double d = std::hypot(tr.captured[j].u - tr.calculated[i].first,
                                                tr.captured[j].v - tr.calculated[i].second);
                    if (d < bd) bd = d, best = j;
                }
                used[best] = 1;
                after.emplace_back(tr.captured[best].u, tr.captured[best].v);
            }
            try {
                tr.estimated = estimate_affine(before, after);
            } catch (const Error&) {
                tr.estimated.kind = "unresolved";
            }
        } else {
            tr.estimated.kind = "unresolved";
        }
        res.rows.push_back(std::move(tr));
    }
    return res;
}

namespace {

std::string points(const std::vector<BinnedPeak>& pts) {
    std::string s;
    for (const auto& p : pts) s += "(" + std::to_string(p.u) + ", " + std::to_string(p.v) + ")";
    return s;
}

std::string points(const std::vector<std::pair<double, double>>& pts) {
    std::string s;
    for (const auto& [u, v] : pts) s += "(" + io::fmt6(std::nearbyint(u * 1e6) / 1e6) + ", " +
                                        io::fmt6(std::nearbyint(v * 1e6) / 1e6) + ")";
    return s;
}

std::string describe(const EstimatedTransform& e) {
    std::string s = e.kind;
    for (const auto& [n, v] : e.coefficients) s += " " + n + "=" + io::fmt6(v);
    return s;
}

}  // namespace

std::string format_table(const TableResult& table, bool diff) {
    std::ostringstream os;
    os << "Table " << table.id << ": " << table.title << '\n';
    for (const auto& r : table.rows) {
        os << "  " << r.label << '\n';
        os << "    captured:   " << points(r.captured) << '\n';
        os << "    calculated: " << points(r.calculated) << '\n';
        os << "    estimated:  " << describe(r.estimated) << '\n';
        if (diff) {
            os << "    golden captured   " << points(r.golden_captured) << "  "
               << (r.captured_match ? "MATCH" : "MISMATCH") << '\n';
            os << "    golden calculated " << points(r.golden_calculated) << "  "
               << (r.calculated_match ? "MATCH" : "MISMATCH") << '\n';
        }
    }
    return os.str();
}

}  // namespace sftp
