#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace sftp {

using Complex = std::complex<double>;

// Real M×N raster, row-major: samples[y * width + x] with x = column, y = row.
struct SpatialImage {
    int width = 0;
    int height = 0;
    std::vector<double> samples;
    double fill_value = 0.0;

    SpatialImage() = default;
    SpatialImage(int w, int h, double fill = 0.0);

    double& at(int x, int y) { return samples[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return samples[static_cast<std::size_t>(y) * width + x]; }

    double min() const;
    double max() const;
    void validate() const;
};

// Complex M×N grid. When centered is false, sample (kx, ky) sits at storage
// column kx, row ky (both taken mod the size). When centered is true the
// quadrants are swapped so that zero frequency sits at column M/2, row N/2
// (integer division), and storage column c holds signed index c - M/2.
struct ComplexSpectrum {
    int width = 0;
    int height = 0;
    std::vector<Complex> samples;
    bool centered = false;

    ComplexSpectrum() = default;
    ComplexSpectrum(int w, int h, bool is_centered = false);

    Complex& at(int col, int row) { return samples[static_cast<std::size_t>(row) * width + col]; }
    const Complex& at(int col, int row) const {
        return samples[static_cast<std::size_t>(row) * width + col];
    }
};

// Real grid laid out like the spectrum it was derived from.
struct RealGrid {
    int width = 0;
    int height = 0;
    std::vector<double> values;
    bool centered = false;

    double& at(int col, int row) { return values[static_cast<std::size_t>(row) * width + col]; }
    double at(int col, int row) const { return values[static_cast<std::size_t>(row) * width + col]; }
};

// Cartesian frequency coordinates (u, v) label the signed DFT indices
// (kx, ky) along columns and rows as u = -kx, v = ky. Every other module
// (encoding, prediction, detection, CSV export) speaks in (u, v).
struct StorageIndex {
    int col;
    int row;
};
StorageIndex cartesian_to_storage(int width, int height, bool centered, int u, int v);
std::pair<int, int> storage_to_cartesian(int width, int height, bool centered, int col, int row);
bool cartesian_in_bounds(int width, int height, double u, double v);
// Signed index range along one axis: [lo, hi].
std::pair<int, int> signed_index_range(int n);

ComplexSpectrum dft_forward(const SpatialImage& image);
// Literal O((MN)^2) summation; the reference the separable path is tested against.
ComplexSpectrum dft_forward_direct(const SpatialImage& image);

// Inverse transform of an uncentered spectrum. The largest |Im| / max|value|
// of the pre-projection result is written to imag_residual when given.
SpatialImage dft_inverse(const ComplexSpectrum& spectrum, double* imag_residual = nullptr);
SpatialImage dft_inverse_direct(const ComplexSpectrum& spectrum, double* imag_residual = nullptr);

ComplexSpectrum center_spectrum(const ComplexSpectrum& spectrum);
ComplexSpectrum uncenter_spectrum(const ComplexSpectrum& spectrum);

RealGrid magnitude(const ComplexSpectrum& spectrum);

constexpr double kPhaseMagnitudeEpsilon = 1e-6;

double wrap_degrees(double deg);  // into [-180, 180)
double phase_of(Complex value, double eps_mag = kPhaseMagnitudeEpsilon);
double phase(const ComplexSpectrum& spectrum, int u, int v, double eps_mag = kPhaseMagnitudeEpsilon);
Complex value_at(const ComplexSpectrum& spectrum, int u, int v);

SpatialImage normalize_minmax(const SpatialImage& image, double lo, double hi);
RealGrid normalize_minmax(const RealGrid& grid, double lo, double hi);
// Visualization helper: magnitude with the zero-frequency bin zeroed, scaled to [0, 255].
RealGrid spectrum_display(const ComplexSpectrum& spectrum);

}  // namespace sftp
