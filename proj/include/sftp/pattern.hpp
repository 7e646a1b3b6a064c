#pragma once

#include <vector>

#include "sftp/dft.hpp"

namespace sftp {

struct FrequencyPeak {
    double u = 0.0;
    double v = 0.0;
    double amplitude = 0.0;
    double phase_deg = 0.0;
};

struct PatternSpec {
    int width = 25;
    int height = 25;
    std::vector<FrequencyPeak> peaks;

    void validate() const;
};

// Four amplitude-10000 peaks at (6,6), (-6,-6), (6,-6), (-6,6) on 25x25.
PatternSpec default_pattern();

// Places amplitude * e^{i phase} at every listed bin of an otherwise empty
// spectrum and inverts it.
SpatialImage encode_peaks(const PatternSpec& spec);
ComplexSpectrum pattern_spectrum(const PatternSpec& spec);

SpatialImage tile_periodic(const SpatialImage& image, int kx, int ky);
SpatialImage crop_window(const SpatialImage& image, int x0, int y0, int width, int height);

}  // namespace sftp
