#pragma once

#include <Eigen/Dense>
#include <optional>

#include "sftp/dft.hpp"

namespace sftp {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

constexpr double kDeterminantEpsilon = 1e-12;
constexpr double kDivideEpsilon = 1e-12;

// Coefficients in image pixel coordinates: x to the right (column), y down (row).
struct TransformCoefficients {
    double chi_x = 1.0, chi_y = 1.0, chi_z = 1.0;
    double psi_yx = 0.0, psi_xy = 0.0, psi_xz = 0.0, psi_yz = 0.0;
    double tau_x = 0.0, tau_y = 0.0;
};

//     | chi_x   psi_yx  tau_x |
// A = | psi_xy  chi_y   tau_y |
//     | psi_xz  psi_yz  chi_z |
class PerspectiveTransform {
public:
    PerspectiveTransform();  // identity
    explicit PerspectiveTransform(const Mat3& a);

    const Mat3& matrix() const { return a_; }
    Mat3 inverse() const;
    double determinant() const { return a_.determinant(); }

    double chi_x() const { return a_(0, 0); }
    double chi_y() const { return a_(1, 1); }
    double chi_z() const { return a_(2, 2); }
    double psi_yx() const { return a_(0, 1); }
    double psi_xy() const { return a_(1, 0); }
    double psi_xz() const { return a_(2, 0); }
    double psi_yz() const { return a_(2, 1); }
    double tau_x() const { return a_(0, 2); }
    double tau_y() const { return a_(1, 2); }

    bool is_affine() const { return a_(2, 0) == 0.0 && a_(2, 1) == 0.0 && a_(2, 2) == 1.0; }
    TransformCoefficients coefficients() const;

    PerspectiveTransform operator*(const PerspectiveTransform& rhs) const {
        return PerspectiveTransform(a_ * rhs.a_);
    }

private:
    Mat3 a_;
};

PerspectiveTransform build_transform(const TransformCoefficients& c);
// f(cos x + sin y, cos y - sin x): upper-left block [[c, s], [-s, c]].
PerspectiveTransform rotation_transform(double theta_deg);
PerspectiveTransform translation_transform(double tau_x, double tau_y);

struct DecomposedTransform {
    Mat3 B;  // A with the translation column zeroed (B(2,2) keeps chi_z)
    Vec3 C;  // (tau_x, tau_y, 0)

    // B^-1 via partial-pivot LU
    Mat3 B_inverse() const;
};

DecomposedTransform decompose(const PerspectiveTransform& a);
PerspectiveTransform recompose(const DecomposedTransform& d);

// (x'/z', y'/z', 1)
Vec3 apply_point(const PerspectiveTransform& a, const Vec3& p);
Vec3 perspective_divide(const Vec3& p);

enum class Interpolation { Bilinear, ArithmeticSum };

// Point of the pixel grid that the transform treats as its origin.
struct Anchor {
    double x = 0.0;
    double y = 0.0;

    static Anchor corner() { return {0.0, 0.0}; }
    static Anchor center(int width, int height) { return {(width - 1) / 2.0, (height - 1) / 2.0}; }
};

// Applies A about the anchor. Bilinear pulls every output pixel back through
// A^-1; ArithmeticSum pushes every source pixel forward and adds it into the
// nearest output bin. Missing data takes image.fill_value. The default anchor
// is the image center.
SpatialImage warp_image(const SpatialImage& image, const PerspectiveTransform& a, Interpolation scheme,
                        std::optional<Anchor> anchor = std::nullopt);

double round_half_away(double x);

}  // namespace sftp
