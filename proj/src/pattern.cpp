#include "sftp/pattern.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sftp/errors.hpp"

namespace sftp {

namespace {

bool is_integral(double x) { return std::isfinite(x) && x == std::floor(x); }

double angle_gap(double a, double b) { return std::abs(wrap_degrees(a - b)); }

}  // namespace

void PatternSpec::validate() const {
    if (width <= 0 || height <= 0) throw InvalidArgument("pattern dimensions must be positive");
    for (const auto& p : peaks) {
        if (!is_integral(p.u) || !is_integral(p.v))
            throw InvalidArgument("encoded peaks must sit on integer bins");
        if (!(p.amplitude >= 0.0) || !std::isfinite(p.amplitude) || !std::isfinite(p.phase_deg))
            throw InvalidArgument("peak amplitude must be finite and non-negative");
        if (!cartesian_in_bounds(width, height, p.u, p.v))
            throw OutOfBounds("peak (" + std::to_string(p.u) + ", " + std::to_string(p.v) +
                              ") outside the spectrum");
    }
    // Every peak needs a partner at the conjugate bin with equal amplitude and
    // negated phase, otherwise the spatial pattern is not real.
    for (const auto& p : peaks) {
        const auto own = cartesian_to_storage(width, height, false, static_cast<int>(p.u), static_cast<int>(p.v));
        const StorageIndex mirror{(width - own.col) % width, (height - own.row) % height};
        bool found = false;
        for (const auto& q : peaks) {
            const auto qi = cartesian_to_storage(width, height, false, static_cast<int>(q.u), static_cast<int>(q.v));
            if (qi.col != mirror.col || qi.row != mirror.row) continue;
            if (std::abs(q.amplitude - p.amplitude) <= 1e-9 * std::max(1.0, p.amplitude) &&
                (p.amplitude == 0.0 || angle_gap(q.phase_deg, -p.phase_deg) <= 1e-9)) {
                found = true;
                break;
            }
        }
        if (!found)
            throw InvalidArgument("peak list is not conjugate-symmetric at (" + std::to_string(p.u) + ", " +
                                  std::to_string(p.v) + ")");
    }
}

PatternSpec default_pattern() {
    PatternSpec s;
    s.width = 25;
    s.height = 25;
    s.peaks = {{6, 6, 10000, 0}, {-6, -6, 10000, 0}, {6, -6, 10000, 0}, {-6, 6, 10000, 0}};
    return s;
}

ComplexSpectrum pattern_spectrum(const PatternSpec& spec) {
    spec.validate();
    ComplexSpectrum s(spec.width, spec.height, false);
    for (const auto& p : spec.peaks) {
        const auto idx = cartesian_to_storage(spec.width, spec.height, false, static_cast<int>(p.u),
                                              static_cast<int>(p.v));
        s.at(idx.col, idx.row) = std::polar(p.amplitude, p.phase_deg * std::numbers::pi / 180.0);
    }
    return s;
}

SpatialImage encode_peaks(const PatternSpec& spec) {
    double residual = 0.0;
    SpatialImage img = dft_inverse(pattern_spectrum(spec), &residual);
    if (residual > 1e-9) throw Error("encoded pattern is not real");
    img.fill_value = 0.5 * (img.min() + img.max());
    return img;
}

SpatialImage tile_periodic(const SpatialImage& image, int kx, int ky) {
    image.validate();
    if (kx <= 0 || ky <= 0) throw InvalidArgument("tile counts must be positive");
    SpatialImage out(image.width * kx, image.height * ky, image.fill_value);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) out.at(x, y) = image.at(x % image.width, y % image.height);
    return out;
}

SpatialImage crop_window(const SpatialImage& image, int x0, int y0, int width, int height) {
    image.validate();
    if (width <= 0 || height <= 0) throw InvalidArgument("window size must be positive");
    if (x0 < 0 || y0 < 0 || x0 + width > image.width || y0 + height > image.height)
        throw OutOfBounds("window (" + std::to_string(x0) + ", " + std::to_string(y0) + ") " +
                          std::to_string(width) + "x" + std::to_string(height) + " leaves the image");
    SpatialImage out(width, height, image.fill_value);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) out.at(x, y) = image.at(x0 + x, y0 + y);
    return out;
}

}  // namespace sftp
