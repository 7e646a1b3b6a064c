#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sftp/dft.hpp"
#include "sftp/predictor.hpp"

namespace sftp {

struct PeakDetection {
    int u = 0;
    int v = 0;
    double ncc_score = 0.0;
    double magnitude = 0.0;
};

struct DetectionResult {
    std::vector<PeakDetection> peaks;
    bool degraded = false;  // fewer than k candidates survived
};

struct Template {
    int width = 0;
    int height = 0;
    std::vector<double> values;
};

// Single centered impulse over zeros.
Template impulse_template(int width, int height);

struct DetectOptions {
    int nms_radius = 1;
    // Periodic: the template slides with wrap-around over the full period of
    // the spectrum. Otherwise only positions where it fits ("valid") score.
    bool periodic = true;
};

// Zero-normalized cross-correlation of the template over a centered magnitude
// grid. Candidates are local maxima of the score (zero frequency excluded),
// ranked by score then (u, v), and thinned by non-maximum suppression.
DetectionResult detect_peaks(const RealGrid& mag, const Template& tmpl, int k, const DetectOptions& opt = {});
// Default template: an impulse the size of the grid, so every window spans one
// full period.
DetectionResult detect_peaks(const RealGrid& mag, int k, const DetectOptions& opt = {});
// Score map laid out like mag; positions without a score hold NaN.
RealGrid ncc_map(const RealGrid& mag, const Template& tmpl, bool periodic);

struct EstimatedTransform {
    std::string kind;  // identity | scale | shear | rotation | affine
    std::vector<std::pair<std::string, double>> coefficients;
    double residual = 0.0;       // RMS fit error in frequency bins
    double class_residual = 0.0; // off-pattern error of the chosen kind
    Eigen::Matrix2d frequency_map = Eigen::Matrix2d::Identity();  // after = map * before
    Eigen::Matrix2d linear = Eigen::Matrix2d::Identity();         // pixel-frame [[chi_x, psi_yx], [psi_xy, chi_y]]

    std::optional<double> get(const std::string& name) const;
};

struct EstimateOptions {
    double eps_class = 0.05;
};

using UV = std::pair<double, double>;

EstimatedTransform estimate_affine(const std::vector<UV>& before, const std::vector<UV>& after,
                                   const EstimateOptions& opt = {});

struct PhaseMeasurement {
    int u = 0;
    int v = 0;
    double phase_deg = 0.0;
    double magnitude = 0.0;
    bool undefined = false;  // magnitude below eps_mag; phase_deg is meaningless
};

std::vector<PhaseMeasurement> measure_phase_set(const ComplexSpectrum& spectrum,
                                                const std::vector<std::pair<int, int>>& peaks,
                                                double eps_mag = kPhaseMagnitudeEpsilon);

// Integer Cartesian window shift in [0, M) x [0, N) whose predicted phase
// changes best match after - before.
struct TranslationEstimate {
    int tau_x = 0;
    int tau_y = 0;
    double residual_deg = 0.0;  // largest angular mismatch over the used peaks
};

TranslationEstimate estimate_translation(const std::vector<PhaseMeasurement>& before,
                                         const std::vector<PhaseMeasurement>& after, int M, int N);

}  // namespace sftp
