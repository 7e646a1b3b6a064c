#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sftp/estimation.hpp"
#include "sftp/geometry.hpp"
#include "sftp/pattern.hpp"
#include "sftp/predictor.hpp"

namespace sftp {

enum class SweepKind {
    ScaleX, ScaleY, ScaleZ, ScaleXY, ScaleXYZ,
    ShearYX, ShearXY, ShearXYSym,
    Rotation,
    TranslateX, TranslateXY,
    WarpXZ, WarpYZ, WarpXYZSym,
};

const std::vector<SweepKind>& all_sweep_kinds();
std::string kind_name(SweepKind kind);    // scale_x, shear_xy_sym, ...
SweepKind parse_kind(const std::string& name);
std::string export_name(SweepKind kind);  // Scale_X, Shear_Y, Warp_XY, ...
bool is_translation(SweepKind kind);
bool is_warp(SweepKind kind);
bool is_affine(SweepKind kind);

// Rotation turns about the image center; every other kind uses the top-left
// pixel as the origin of the transform.
Anchor default_anchor(SweepKind kind, int width, int height);
PerspectiveTransform sweep_transform(SweepKind kind, double value);

struct SweepConfig {
    SweepKind kind = SweepKind::ScaleX;
    double start = 0.75;
    double stop = 1.25;
    double step = 0.005;
    PatternSpec pattern = default_pattern();
    Interpolation interpolation = Interpolation::Bilinear;
    int tile_x = 3;
    int tile_y = 3;
    std::optional<Anchor> anchor;
    std::optional<double> fill_value;

    // Standard sampling range and step for the kind.
    static SweepConfig standard(SweepKind kind);
    void validate() const;
    int sample_count() const;
    double sample(int i) const;
};

struct PeakRecord {
    FrequencyPeak base;
    bool captured = false;
    BinnedPeak capture;
    double predicted_u = 0.0;
    double predicted_v = 0.0;
    BinnedPeak binned;
    bool aliased = false;
    double captured_phase = 0.0;      // at the captured bin
    double captured_magnitude = 0.0;
    double initial_phase = 0.0;       // at the encoded bin
    double initial_magnitude = 0.0;
    double predicted_phase = 0.0;
    double predicted_magnitude = 0.0;
};

struct SweepRecord {
    double coefficient = 0.0;
    std::vector<PeakRecord> peaks;  // same order as the pattern's peak list
    std::vector<PeakDetection> detections;
    bool degraded = false;
    bool congruent = false;  // captured set equals the binned prediction set
};

// One simulated capture: transform (or window), DFT, center, detect.
struct Capture {
    SpatialImage image;
    ComplexSpectrum spectrum;  // centered
    RealGrid magnitude;
    DetectionResult detection;
};

Capture capture_image(const SpatialImage& image, int k);
Capture simulate_sample(const SweepConfig& config, double value);

std::vector<SweepRecord> run_sweep(const SweepConfig& config);
SweepRecord run_sample(const SweepConfig& config, double value);

// Figure-source CSV for one sweep.
std::string sweep_csv(const SweepConfig& config, const std::vector<SweepRecord>& records);
std::filesystem::path export_figures(const SweepConfig& config, const std::vector<SweepRecord>& records,
                                     const std::filesystem::path& out_dir);

struct TableRow {
    std::string label;
    SweepKind kind;
    double value = 0.0;
    std::vector<BinnedPeak> captured;
    std::vector<std::pair<double, double>> calculated;
    EstimatedTransform estimated;
    std::string golden_estimated;
    std::vector<BinnedPeak> golden_captured;
    std::vector<std::pair<double, double>> golden_calculated;
    bool captured_match = false;
    bool calculated_match = false;
};

struct TableResult {
    int id = 0;
    std::string title;
    std::vector<TableRow> rows;
    bool all_match() const;
};

std::vector<int> table_ids();
TableResult reproduce_table(int table_id, Interpolation interpolation = Interpolation::Bilinear);
std::string format_table(const TableResult& table, bool diff);

// Calculated-point comparison: within tol of the printed value, or, when the
// printed value is an integer pair, equal after binning.
bool calculated_matches(const std::vector<std::pair<double, double>>& predicted,
                        const std::vector<std::pair<double, double>>& printed, double tol = 1e-3);

}  // namespace sftp
