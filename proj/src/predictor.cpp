#include "sftp/predictor.hpp"

#include <cmath>
#include <numbers>

#include "sftp/errors.hpp"

namespace sftp {

namespace {

const Mat3& mirror_x() {
    static const Mat3 f = Eigen::Vector3d(-1.0, 1.0, 1.0).asDiagonal();
    return f;
}

double wrap360(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    return w >= 360.0 ? 0.0 : w;
}

double wrap_into(double x, int lo, int hi) {
    const int n = hi - lo + 1;
    double w = std::fmod(x - lo, static_cast<double>(n));
    if (w < 0.0) w += n;
    return w + lo;
}

}  // namespace

Mat3 to_cartesian_frame(const Mat3& a) { return mirror_x() * a * mirror_x(); }

FrequencyMap::FrequencyMap(const PerspectiveTransform& a, int M, int N, int D) : m_(M), n_(N), d_(D) {
    if (M <= 0 || N <= 0 || D <= 0) throw InvalidArgument("spectrum dimensions must be positive");
    DecomposedTransform dec = decompose(PerspectiveTransform(to_cartesian_frame(a.matrix())));
    b_inv_ = dec.B_inverse();
    c_ = dec.C;
}

Vec3 FrequencyMap::homogeneous(double u, double v, double w) const {
    return b_inv_.transpose() * Vec3(u, v, w);
}

Eigen::Vector2d FrequencyMap::map(double u, double v) const {
    const Vec3 h = homogeneous(u, v, 1.0);
    if (std::abs(h.z()) < kDivideEpsilon) throw PointAtInfinity("frequency maps to infinity");
    return {h.x() / h.z(), h.y() / h.z()};
}

Vec3 FrequencyMap::periodicity(double u, double v, double w) const {
    return b_inv_.transpose() * Vec3(u / m_, v / n_, w / d_);
}

double FrequencyMap::phase_shift_deg(double u, double v) const {
    return wrap360(-360.0 * periodicity(u, v).dot(c_));
}

Complex FrequencyMap::phase_factor(double u, double v) const {
    return std::polar(1.0, phase_shift_deg(u, v) * std::numbers::pi / 180.0);
}

FrequencyMap build_frequency_map(const PerspectiveTransform& a, int M, int N, int D) {
    return FrequencyMap(a, M, N, D);
}

PeakPrediction predict_peak(const FrequencyMap& map, const FrequencyPeak& peak) {
    if (!cartesian_in_bounds(map.M(), map.N(), peak.u, peak.v)) throw OutOfBounds("peak outside the spectrum");
    PeakPrediction out;
    const auto uv = map.map(peak.u, peak.v);
    out.peak.u = uv.x();
    out.peak.v = uv.y();
    out.peak.amplitude = peak.amplitude;
    out.peak.phase_deg = wrap_degrees(peak.phase_deg + map.phase_shift_deg(peak.u, peak.v));
    if (!cartesian_in_bounds(map.M(), map.N(), out.peak.u, out.peak.v)) {
        out.aliased = true;
        // u = -kx, so the admissible u range is the mirrored index range
        const auto [xlo, xhi] = signed_index_range(map.M());
        const auto [ylo, yhi] = signed_index_range(map.N());
        out.peak.u = wrap_into(out.peak.u, -xhi, -xlo);
        out.peak.v = wrap_into(out.peak.v, ylo, yhi);
    }
    return out;
}

BinnedPeak bin_peak(double u, double v) {
    return {static_cast<int>(round_half_away(u)), static_cast<int>(round_half_away(v))};
}

FrequencyPeak pair_rotation(double theta_deg, const FrequencyPeak& peak) {
    const double t = theta_deg * std::numbers::pi / 180.0;
    const double c = std::cos(t);
    const double s = std::sin(t);
    FrequencyPeak out = peak;
    out.u = c * peak.u - s * peak.v;
    out.v = s * peak.u + c * peak.v;
    return out;
}

FrequencyPeak pair_scale(double chi_x, double chi_y, double chi_z, const FrequencyPeak& peak) {
    if (chi_x == 0.0 || chi_y == 0.0 || chi_z == 0.0) throw SingularTransform("zero scale", 0.0);
    FrequencyPeak out = peak;
    out.u = peak.u * chi_z / chi_x;
    out.v = peak.v * chi_z / chi_y;
    return out;
}

FrequencyPeak pair_shear(double psi_yx, double psi_xy, const FrequencyPeak& peak) {
    const double d = 1.0 - psi_yx * psi_xy;
    if (std::abs(d) < kDeterminantEpsilon) throw SingularTransform("degenerate shear", d);
    FrequencyPeak out = peak;
    out.u = (peak.u + psi_xy * peak.v) / d;
    out.v = (psi_yx * peak.u + peak.v) / d;
    return out;
}

double predict_translation_phase(double tau_x, double tau_y, int M, int N, double u, double v) {
    if (M <= 0 || N <= 0) throw InvalidArgument("spectrum dimensions must be positive");
    return wrap360(360.0 * (u * tau_x / M + v * tau_y / N));
}

std::pair<int, int> window_offset_pixels(int tau_x, int tau_y) { return {-tau_x, tau_y}; }

FrequencyPeak predict_warp(double psi_xz, double psi_yz, const FrequencyPeak& peak, double x, double y) {
    const double s = psi_xz * x + psi_yz * y + 1.0;
    if (std::abs(s) < kDivideEpsilon) throw PointAtInfinity("warp denominator vanishes at the anchor");
    FrequencyPeak out = peak;
    out.u = peak.u * s;
    out.v = peak.v * s;
    return out;
}

}  // namespace sftp
