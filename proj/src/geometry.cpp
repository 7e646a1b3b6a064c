#include "sftp/geometry.hpp"

#include <cmath>
#include <numbers>

#include "sftp/errors.hpp"

namespace sftp {

namespace {

void require_invertible(const Mat3& m, const char* what) {
    const double det = m.determinant();
    if (!(std::abs(det) > kDeterminantEpsilon)) throw SingularTransform(what, det);
}

}  // namespace

PerspectiveTransform::PerspectiveTransform() : a_(Mat3::Identity()) {}

PerspectiveTransform::PerspectiveTransform(const Mat3& a) : a_(a) {
    if (!a.allFinite()) throw InvalidArgument("transform has non-finite entries");
    require_invertible(a_, "singular perspective transform");
}

Mat3 PerspectiveTransform::inverse() const { return a_.partialPivLu().inverse(); }

TransformCoefficients PerspectiveTransform::coefficients() const {
    TransformCoefficients c;
    c.chi_x = chi_x();
    c.chi_y = chi_y();
    c.chi_z = chi_z();
    c.psi_yx = psi_yx();
    c.psi_xy = psi_xy();
    c.psi_xz = psi_xz();
    c.psi_yz = psi_yz();
    c.tau_x = tau_x();
    c.tau_y = tau_y();
    return c;
}

PerspectiveTransform build_transform(const TransformCoefficients& c) {
    Mat3 a;
    a << c.chi_x, c.psi_yx, c.tau_x,
         c.psi_xy, c.chi_y, c.tau_y,
         c.psi_xz, c.psi_yz, c.chi_z;
    return PerspectiveTransform(a);
}

PerspectiveTransform rotation_transform(double theta_deg) {
    const double t = theta_deg * std::numbers::pi / 180.0;
    const double c = std::cos(t);
    const double s = std::sin(t);
    Mat3 a;
    a << c, s, 0.0,
         -s, c, 0.0,
         0.0, 0.0, 1.0;
    return PerspectiveTransform(a);
}

PerspectiveTransform translation_transform(double tau_x, double tau_y) {
    TransformCoefficients c;
    c.tau_x = tau_x;
    c.tau_y = tau_y;
    return build_transform(c);
}

Mat3 DecomposedTransform::B_inverse() const {
    require_invertible(B, "singular linear part B");
    return B.partialPivLu().inverse();
}

DecomposedTransform decompose(const PerspectiveTransform& a) {
    DecomposedTransform d;
    d.B = a.matrix();
    d.B(0, 2) = 0.0;
    d.B(1, 2) = 0.0;
    d.C = Vec3(a.tau_x(), a.tau_y(), 0.0);
    require_invertible(d.B, "singular linear part B");
    return d;
}

PerspectiveTransform recompose(const DecomposedTransform& d) {
    Mat3 a = d.B;
    a(0, 2) = d.C(0);
    a(1, 2) = d.C(1);
    return PerspectiveTransform(a);
}

Vec3 perspective_divide(const Vec3& p) {
    if (std::abs(p.z()) < kDivideEpsilon) throw PointAtInfinity("point maps to infinity");
    return Vec3(p.x() / p.z(), p.y() / p.z(), 1.0);
}

Vec3 apply_point(const PerspectiveTransform& a, const Vec3& p) {
    return perspective_divide(a.matrix() * p);
}

double round_half_away(double x) {
    // Snap float noise so an exact .5 produced by arithmetic like 6 / 0.8 still
    // counts as a tie.
    const double snapped = std::nearbyint(x * 1e9) / 1e9;
    return std::round(snapped);
}

namespace {

SpatialImage warp_bilinear(const SpatialImage& in, const Mat3& inv, const Anchor& o) {
    SpatialImage out(in.width, in.height, in.fill_value);
    auto sample = [&](int x, int y) {
        if (x < 0 || y < 0 || x >= in.width || y >= in.height) return in.fill_value;
        return in.at(x, y);
    };
    for (int y = 0; y < in.height; ++y) {
        for (int x = 0; x < in.width; ++x) {
            const Vec3 q = inv * Vec3(x - o.x, y - o.y, 1.0);
            if (std::abs(q.z()) < kDivideEpsilon) {
                out.at(x, y) = in.fill_value;
                continue;
            }
            const double sx = q.x() / q.z() + o.x;
            const double sy = q.y() / q.z() + o.y;
            if (!(sx > -1.0 && sy > -1.0 && sx < in.width && sy < in.height)) {
                out.at(x, y) = in.fill_value;
                continue;
            }
            const int x0 = static_cast<int>(std::floor(sx));
            const int y0 = static_cast<int>(std::floor(sy));
            const double fx = sx - x0;
            const double fy = sy - y0;
            out.at(x, y) = (1 - fx) * (1 - fy) * sample(x0, y0) + fx * (1 - fy) * sample(x0 + 1, y0) +
                           (1 - fx) * fy * sample(x0, y0 + 1) + fx * fy * sample(x0 + 1, y0 + 1);
        }
    }
    return out;
}

SpatialImage warp_sum(const SpatialImage& in, const Mat3& a, const Anchor& o) {
    SpatialImage out(in.width, in.height, in.fill_value);
    std::vector<char> hit(out.samples.size(), 0);
    for (int y = 0; y < in.height; ++y) {
        for (int x = 0; x < in.width; ++x) {
            const Vec3 p = a * Vec3(x - o.x, y - o.y, 1.0);
            if (std::abs(p.z()) < kDivideEpsilon) continue;
            const double tx = round_half_away(p.x() / p.z() + o.x);
            const double ty = round_half_away(p.y() / p.z() + o.y);
            if (tx < 0 || ty < 0 || tx >= in.width || ty >= in.height) continue;
            const auto idx = static_cast<std::size_t>(ty) * in.width + static_cast<std::size_t>(tx);
            out.samples[idx] += in.at(x, y);
            hit[idx] = 1;
        }
    }
    for (std::size_t i = 0; i < hit.size(); ++i)
        if (!hit[i]) out.samples[i] = in.fill_value;
    return out;
}

}  // namespace

SpatialImage warp_image(const SpatialImage& image, const PerspectiveTransform& a, Interpolation scheme,
                        std::optional<Anchor> anchor) {
    image.validate();
    const Anchor o = anchor.value_or(Anchor::center(image.width, image.height));
    if (scheme == Interpolation::Bilinear) return warp_bilinear(image, a.inverse(), o);
    return warp_sum(image, a.matrix(), o);
}

}  // namespace sftp
