#pragma once

#include "sftp/geometry.hpp"
#include "sftp/pattern.hpp"

namespace sftp {

// Transforms are specified in pixel coordinates; spectra are labelled in
// Cartesian (u, v) = (-kx, ky). Expressed in the matching spatial frame
// (x mirrored) the transform is F·A·F with F = diag(-1, 1, 1); that is the
// matrix the frequency map works with.
Mat3 to_cartesian_frame(const Mat3& a);

// Frequency-side action of a transform applied by warp_image.
//   H = [u v w]·B^-1, new peak = (H_u / H_w, H_v / H_w)
//   E = [u/M v/N w/D]·B^-1, phase shift = -360·E·C degrees
// B and C are the Cartesian-frame linear part and translation. Peaks carry w = 1.
class FrequencyMap {
public:
    FrequencyMap(const PerspectiveTransform& a, int M, int N, int D = 1);

    Vec3 homogeneous(double u, double v, double w = 1.0) const;
    Eigen::Vector2d map(double u, double v) const;
    Vec3 periodicity(double u, double v, double w = 1.0) const;  // E
    double phase_shift_deg(double u, double v) const;              // in [0, 360)
    Complex phase_factor(double u, double v) const;

    const Mat3& B_inverse() const { return b_inv_; }
    const Vec3& C() const { return c_; }
    int M() const { return m_; }
    int N() const { return n_; }
    int D() const { return d_; }

private:
    Mat3 b_inv_;
    Vec3 c_;
    int m_, n_, d_;
};

FrequencyMap build_frequency_map(const PerspectiveTransform& a, int M, int N, int D = 1);

struct PeakPrediction {
    FrequencyPeak peak;  // continuous coordinate, amplitude kept, phase advanced
    bool aliased = false;
};

struct BinnedPeak {
    int u = 0;
    int v = 0;
    bool operator==(const BinnedPeak&) const = default;
    auto operator<=>(const BinnedPeak&) const = default;
};

PeakPrediction predict_peak(const FrequencyMap& map, const FrequencyPeak& peak);
BinnedPeak bin_peak(double u, double v);  // round half away from zero, per coordinate
inline BinnedPeak bin_peak(const FrequencyPeak& p) { return bin_peak(p.u, p.v); }

// Closed-form pairs. Coefficients in pixel coordinates, as build_transform takes them.
FrequencyPeak pair_rotation(double theta_deg, const FrequencyPeak& peak);
FrequencyPeak pair_scale(double chi_x, double chi_y, double chi_z, const FrequencyPeak& peak);
FrequencyPeak pair_shear(double psi_yx, double psi_xy, const FrequencyPeak& peak);

// Phase change at (u, v) when the sampling window moves by (tau_x, tau_y) in
// Cartesian coordinates: 360·(u·tau_x/M + v·tau_y/N) mod 360, in [0, 360).
double predict_translation_phase(double tau_x, double tau_y, int M, int N, double u, double v);

// Window origin, in pixels, that realizes a Cartesian window shift.
std::pair<int, int> window_offset_pixels(int tau_x, int tau_y);

// Single-point warp estimate: coordinates scaled by s = psi_xz·x + psi_yz·y + 1
// evaluated at one spatial point (x, y) of the transform's frame. It ignores
// every other pixel, so it drifts away from a full-image simulation once the
// warp is large enough for peaks to smear.
FrequencyPeak predict_warp(double psi_xz, double psi_yz, const FrequencyPeak& peak, double x, double y);

}  // namespace sftp
