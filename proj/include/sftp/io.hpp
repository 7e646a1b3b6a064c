#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sftp/estimation.hpp"
#include "sftp/geometry.hpp"
#include "sftp/pattern.hpp"

namespace sftp::io {

using nlohmann::json;

// %.6g
std::string fmt6(double x);

// Raw reals, one image row per CSV line.
void write_image_csv(const SpatialImage& image, const std::filesystem::path& path);
SpatialImage read_image_csv(const std::filesystem::path& path);
// 8-bit binary PGM after min-max normalization to [0, 255].
void write_pgm(const SpatialImage& image, const std::filesystem::path& path);
void write_pgm(const RealGrid& grid, const std::filesystem::path& path);

// Columns u, v, re, im in Cartesian coordinates.
void write_spectrum_csv(const ComplexSpectrum& spectrum, const std::filesystem::path& path);

PatternSpec pattern_from_json(const json& j);
json pattern_to_json(const PatternSpec& spec);

// Accepts a 9-value row-major array, {"matrix": [...]}, {"theta_deg": t}
// or named coefficients {"chi_x": 1.25, ...}.
PerspectiveTransform transform_from_json(const json& j);
json transform_to_json(const PerspectiveTransform& a);

void write_detections_csv(const std::vector<PeakDetection>& peaks, const std::filesystem::path& path);
json estimate_to_json(const EstimatedTransform& est);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace sftp::io
