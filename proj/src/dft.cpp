#include "sftp/dft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sftp/errors.hpp"

namespace sftp {

namespace {

std::vector<Complex> twiddles(int n, double sign) {
    std::vector<Complex> w(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double angle = sign * 2.0 * std::numbers::pi * k / n;
        w[k] = Complex(std::cos(angle), std::sin(angle));
    }
    return w;
}

void check_dims(int w, int h) {
    if (w <= 0 || h <= 0) throw InvalidArgument("grid dimensions must be positive");
}

// Row pass then column pass. Twiddles are looked up by (k * x) mod n so the
// exponent is exact integer arithmetic, same as the direct sum.
std::vector<Complex> separable(const std::vector<Complex>& in, int w, int h, double sign) {
    const auto tw = twiddles(w, sign);
    const auto th = twiddles(h, sign);
    std::vector<Complex> rows(in.size());
    for (int y = 0; y < h; ++y) {
        const Complex* src = &in[static_cast<std::size_t>(y) * w];
        Complex* dst = &rows[static_cast<std::size_t>(y) * w];
        for (int k = 0; k < w; ++k) {
            Complex acc(0.0, 0.0);
            for (int x = 0; x < w; ++x) acc += src[x] * tw[(static_cast<long>(k) * x) % w];
            dst[k] = acc;
        }
    }
    std::vector<Complex> out(in.size());
    std::vector<Complex> col(static_cast<std::size_t>(h));
    for (int k = 0; k < w; ++k) {
        for (int y = 0; y < h; ++y) col[y] = rows[static_cast<std::size_t>(y) * w + k];
        for (int l = 0; l < h; ++l) {
            Complex acc(0.0, 0.0);
            for (int y = 0; y < h; ++y) acc += col[y] * th[(static_cast<long>(l) * y) % h];
            out[static_cast<std::size_t>(l) * w + k] = acc;
        }
    }
    return out;
}

std::vector<Complex> direct(const std::vector<Complex>& in, int w, int h, double sign) {
    const auto tw = twiddles(w, sign);
    const auto th = twiddles(h, sign);
    std::vector<Complex> out(in.size());
    for (int l = 0; l < h; ++l) {
        for (int k = 0; k < w; ++k) {
            Complex acc(0.0, 0.0);
            for (int y = 0; y < h; ++y) {
                const Complex ry = th[(static_cast<long>(l) * y) % h];
                for (int x = 0; x < w; ++x) {
                    acc += in[static_cast<std::size_t>(y) * w + x] * tw[(static_cast<long>(k) * x) % w] * ry;
                }
            }
            out[static_cast<std::size_t>(l) * w + k] = acc;
        }
    }
    return out;
}

SpatialImage to_real(const std::vector<Complex>& values, int w, int h, double* imag_residual) {
    SpatialImage img(w, h);
    double max_abs = 0.0;
    double max_im = 0.0;
    const double scale = 1.0 / (static_cast<double>(w) * h);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Complex z = values[i] * scale;
        img.samples[i] = z.real();
        max_abs = std::max(max_abs, std::abs(z));
        max_im = std::max(max_im, std::abs(z.imag()));
    }
    if (imag_residual) *imag_residual = max_abs > 0.0 ? max_im / max_abs : 0.0;
    return img;
}

std::vector<Complex> as_complex(const SpatialImage& image) {
    image.validate();
    return {image.samples.begin(), image.samples.end()};
}

ComplexSpectrum shift_quadrants(const ComplexSpectrum& s, bool to_centered) {
    ComplexSpectrum out(s.width, s.height, to_centered);
    const int ox = s.width / 2;
    const int oy = s.height / 2;
    for (int r = 0; r < s.height; ++r) {
        for (int c = 0; c < s.width; ++c) {
            // centered storage (c, r) holds uncentered ((c - ox) mod M, (r - oy) mod N)
            const int uc = ((c - ox) % s.width + s.width) % s.width;
            const int ur = ((r - oy) % s.height + s.height) % s.height;
            if (to_centered)
                out.at(c, r) = s.at(uc, ur);
            else
                out.at(uc, ur) = s.at(c, r);
        }
    }
    return out;
}

}  // namespace

SpatialImage::SpatialImage(int w, int h, double fill)
    : width(w), height(h), samples(static_cast<std::size_t>(std::max(w, 0)) * std::max(h, 0), 0.0),
      fill_value(fill) {}

double SpatialImage::min() const { return *std::min_element(samples.begin(), samples.end()); }
double SpatialImage::max() const { return *std::max_element(samples.begin(), samples.end()); }

void SpatialImage::validate() const {
    check_dims(width, height);
    if (samples.size() != static_cast<std::size_t>(width) * height)
        throw InvalidArgument("sample count does not match dimensions");
    for (double s : samples)
        if (!std::isfinite(s)) throw InvalidArgument("image contains non-finite samples");
    if (!std::isfinite(fill_value)) throw InvalidArgument("fill value is not finite");
}

ComplexSpectrum::ComplexSpectrum(int w, int h, bool is_centered)
    : width(w), height(h), samples(static_cast<std::size_t>(std::max(w, 0)) * std::max(h, 0)),
      centered(is_centered) {}

std::pair<int, int> signed_index_range(int n) { return {-(n / 2), n - 1 - n / 2}; }

bool cartesian_in_bounds(int width, int height, double u, double v) {
    const auto [xlo, xhi] = signed_index_range(width);
    const auto [ylo, yhi] = signed_index_range(height);
    const double kx = -u;
    return kx >= xlo && kx <= xhi && v >= ylo && v <= yhi;
}

StorageIndex cartesian_to_storage(int width, int height, bool centered, int u, int v) {
    if (!cartesian_in_bounds(width, height, u, v))
        throw OutOfBounds("frequency (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") outside the spectrum");
    const int kx = -u;
    const int ky = v;
    if (centered) return {kx + width / 2, ky + height / 2};
    return {(kx % width + width) % width, (ky % height + height) % height};
}

std::pair<int, int> storage_to_cartesian(int width, int height, bool centered, int col, int row) {
    int kx, ky;
    if (centered) {
        kx = col - width / 2;
        ky = row - height / 2;
    } else {
        kx = col > signed_index_range(width).second ? col - width : col;
        ky = row > signed_index_range(height).second ? row - height : row;
    }
    return {-kx, ky};
}

ComplexSpectrum dft_forward(const SpatialImage& image) {
    ComplexSpectrum s(image.width, image.height, false);
    s.samples = separable(as_complex(image), image.width, image.height, -1.0);
    return s;
}

ComplexSpectrum dft_forward_direct(const SpatialImage& image) {
    ComplexSpectrum s(image.width, image.height, false);
    s.samples = direct(as_complex(image), image.width, image.height, -1.0);
    return s;
}

SpatialImage dft_inverse(const ComplexSpectrum& spectrum, double* imag_residual) {
    check_dims(spectrum.width, spectrum.height);
    if (spectrum.centered) throw InvalidArgument("inverse transform needs an uncentered spectrum");
    return to_real(separable(spectrum.samples, spectrum.width, spectrum.height, 1.0), spectrum.width,
                   spectrum.height, imag_residual);
}

SpatialImage dft_inverse_direct(const ComplexSpectrum& spectrum, double* imag_residual) {
    check_dims(spectrum.width, spectrum.height);
    if (spectrum.centered) throw InvalidArgument("inverse transform needs an uncentered spectrum");
    return to_real(direct(spectrum.samples, spectrum.width, spectrum.height, 1.0), spectrum.width,
                   spectrum.height, imag_residual);
}

ComplexSpectrum center_spectrum(const ComplexSpectrum& spectrum) {
    if (spectrum.centered) return shift_quadrants(spectrum, false);
    return shift_quadrants(spectrum, true);
}

ComplexSpectrum uncenter_spectrum(const ComplexSpectrum& spectrum) {
    if (!spectrum.centered) return spectrum;
    return shift_quadrants(spectrum, false);
}

RealGrid magnitude(const ComplexSpectrum& spectrum) {
    RealGrid g{spectrum.width, spectrum.height, std::vector<double>(spectrum.samples.size()),
               spectrum.centered};
    for (std::size_t i = 0; i < spectrum.samples.size(); ++i) g.values[i] = std::abs(spectrum.samples[i]);
    return g;
}

double wrap_degrees(double deg) {
    double w = std::fmod(deg + 180.0, 360.0);
    if (w < 0.0) w += 360.0;
    w -= 180.0;
    return w >= 180.0 ? w - 360.0 : w;
}

double phase_of(Complex value, double eps_mag) {
    if (std::abs(value) < eps_mag) throw UndefinedPhase("bin magnitude below threshold");
    return wrap_degrees(std::atan2(value.imag(), value.real()) * 180.0 / std::numbers::pi);
}

Complex value_at(const ComplexSpectrum& spectrum, int u, int v) {
    const auto idx = cartesian_to_storage(spectrum.width, spectrum.height, spectrum.centered, u, v);
    return spectrum.at(idx.col, idx.row);
}

double phase(const ComplexSpectrum& spectrum, int u, int v, double eps_mag) {
    return phase_of(value_at(spectrum, u, v), eps_mag);
}

namespace {
template <typename Range>
void rescale(Range& values, double lo, double hi) {
    if (!(hi > lo)) throw InvalidArgument("normalization needs MAX > MIN");
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double fmin = *mn;
    const double fmax = *mx;
    if (fmax == fmin) {
        std::fill(values.begin(), values.end(), lo);
        return;
    }
    const double k = (hi - lo) / (fmax - fmin);
    for (double& v : values) v = lo + (v - fmin) * k;
}
}  // namespace

SpatialImage normalize_minmax(const SpatialImage& image, double lo, double hi) {
    image.validate();
    SpatialImage out = image;
    rescale(out.samples, lo, hi);
    if (image.max() != image.min())
        out.fill_value = lo + (image.fill_value - image.min()) * (hi - lo) / (image.max() - image.min());
    else
        out.fill_value = lo;
    return out;
}

RealGrid normalize_minmax(const RealGrid& grid, double lo, double hi) {
    RealGrid out = grid;
    if (out.values.empty()) return out;
    rescale(out.values, lo, hi);
    return out;
}

RealGrid spectrum_display(const ComplexSpectrum& spectrum) {
    RealGrid mag = magnitude(spectrum);
    const auto zf = cartesian_to_storage(mag.width, mag.height, mag.centered, 0, 0);
    mag.at(zf.col, zf.row) = 0.0;
    return normalize_minmax(mag, 0.0, 255.0);
}

}  // namespace sftp
