#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sftp/errors.hpp"
#include "sftp/predictor.hpp"

using namespace sftp;

namespace {

Eigen::Vector2d map_of(const PerspectiveTransform& a, double u, double v) {
    return build_frequency_map(a, 25, 25).map(u, v);
}

void expect_point(const Eigen::Vector2d& got, double u, double v, double tol = 1e-9) {
    EXPECT_NEAR(got.x(), u, tol);
    EXPECT_NEAR(got.y(), v, tol);
}

TransformCoefficients with(std::initializer_list<std::pair<double TransformCoefficients::*, double>> kv) {
    TransformCoefficients c;
    for (auto [m, v] : kv) c.*m = v;
    return c;
}

}  // namespace

TEST(Predictor, CartesianFrameConjugatesByMirror) {
    const auto a = build_transform(with({{&TransformCoefficients::psi_yx, 0.3},
                                         {&TransformCoefficients::tau_x, 2.0},
                                         {&TransformCoefficients::psi_xz, 0.01}}));
    const Mat3 f = Eigen::Vector3d(-1, 1, 1).asDiagonal();
    EXPECT_TRUE(to_cartesian_frame(a.matrix()).isApprox(f * a.matrix() * f));
}

TEST(Predictor, IdentityMap) {
    const auto m = build_frequency_map(PerspectiveTransform(), 25, 25);
    expect_point(m.map(6, -6), 6, -6);
    EXPECT_EQ(m.phase_shift_deg(6, 6), 0.0);
    EXPECT_NEAR(std::abs(m.phase_factor(3, 4)), 1.0, 1e-12);
}

TEST(Predictor, ScaleExamples) {
    expect_point(map_of(build_transform(with({{&TransformCoefficients::chi_x, 1.25}})), 6, 6), 4.8, 6);
    expect_point(map_of(build_transform(with({{&TransformCoefficients::chi_x, 0.8}, {&TransformCoefficients::chi_y, 0.8}})),
                        6, 6),
                 7.5, 7.5);
    const auto z = pair_scale(1.0, 1.0, 0.75, {6, 6, 1, 0});
    EXPECT_NEAR(z.u, 4.5, 1e-12);
    EXPECT_NEAR(z.v, 4.5, 1e-12);
    EXPECT_EQ(bin_peak(z), (BinnedPeak{5, 5}));
}

TEST(Predictor, ShearExamples) {
    const auto a = build_transform(with({{&TransformCoefficients::psi_yx, 0.3}}));
    expect_point(map_of(a, 6, 6), 6, 7.8);
    expect_point(map_of(a, 6, -6), 6, -4.2);
    const auto s = pair_shear(0.2, 0.2, {6, 6, 1, 0});
    EXPECT_NEAR(s.u, 7.5, 1e-12);
    EXPECT_NEAR(s.v, 7.5, 1e-12);
    const auto t = pair_shear(0.2, 0.2, {6, -6, 1, 0});
    EXPECT_NEAR(t.u, 5.0, 1e-12);
    EXPECT_NEAR(t.v, -5.0, 1e-12);
}

TEST(Predictor, RotationExamples) {
    const auto p = predict_peak(build_frequency_map(rotation_transform(30.0), 25, 25), {6, 6, 10000, 0});
    EXPECT_NEAR(p.peak.u, 2.196, 1e-3);
    EXPECT_NEAR(p.peak.v, 8.196, 1e-3);
    EXPECT_FALSE(p.aliased);
    EXPECT_EQ(p.peak.amplitude, 10000.0);
    const auto r0 = pair_rotation(0.0, {6, -6, 1, 0});
    EXPECT_NEAR(r0.u, 6.0, 1e-15);
    EXPECT_NEAR(r0.v, -6.0, 1e-15);
}

TEST(Predictor, PairsAgreeWithGeneralMap) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> c(-12, 12), s(0.75, 1.25), h(-0.3, 0.3), a(0, 360);
    for (int i = 0; i < 200; ++i) {
        const FrequencyPeak p{c(rng), c(rng), 1, 0};
        const double t = a(rng);
        const auto r = pair_rotation(t, p);
        expect_point(map_of(rotation_transform(t), p.u, p.v), r.u, r.v);
        const double sx = s(rng), sy = s(rng), sz = s(rng);
        const auto q = pair_scale(sx, sy, sz, p);
        expect_point(map_of(build_transform(with({{&TransformCoefficients::chi_x, sx},
                                                  {&TransformCoefficients::chi_y, sy},
                                                  {&TransformCoefficients::chi_z, sz}})),
                            p.u, p.v),
                     q.u, q.v);
        const double hyx = h(rng), hxy = h(rng);
        const auto w = pair_shear(hyx, hxy, p);
        expect_point(map_of(build_transform(with({{&TransformCoefficients::psi_yx, hyx},
                                                  {&TransformCoefficients::psi_xy, hxy}})),
                            p.u, p.v),
                     w.u, w.v);
    }
}

TEST(Predictor, CompositionOfMaps) {
    // The map of A2·A1 is the map of A2 applied after the map of A1.
    const auto a1 = rotation_transform(20.0);
    const auto a2 = build_transform(with({{&TransformCoefficients::chi_x, 1.1}, {&TransformCoefficients::psi_xy, 0.1}}));
    const auto once = map_of(a1, 5, -3);
    expect_point(map_of(a2, once.x(), once.y()), map_of(a2 * a1, 5, -3).x(), map_of(a2 * a1, 5, -3).y());
}

TEST(Predictor, WarpUsesPerspectiveRow) {
    const auto a = build_transform(with({{&TransformCoefficients::psi_xz, 0.003}}));
    const auto m = build_frequency_map(a, 25, 25);
    const Vec3 h = m.homogeneous(6, 6);
    expect_point(m.map(6, 6), h.x() / h.z(), h.y() / h.z());
    // Mirrored frame puts -0.003 at (2,0); its inverse has +0.003, so [6 6 1]·B^-1 = (6.003, 6, 1).
    expect_point(m.map(6, 6), 6.003, 6.0, 1e-12);
    const auto both = build_transform(with({{&TransformCoefficients::psi_xz, 0.003}, {&TransformCoefficients::psi_yz, 0.003}}));
    expect_point(map_of(both, 6, 6), 6.003, 5.997, 1e-12);
    expect_point(map_of(both, 6, -6), 6.003, -6.003, 1e-12);

    const auto id = predict_warp(0.0, 0.0, {6, 6, 1, 0}, 12, 12);
    EXPECT_EQ(id.u, 6.0);
    EXPECT_EQ(id.v, 6.0);
    const auto w = predict_warp(0.003, 0.003, {6, -6, 1, 0}, 10, 10);
    EXPECT_NEAR(w.u, 6.0 * 1.06, 1e-12);
    EXPECT_NEAR(w.v, -6.0 * 1.06, 1e-12);
    EXPECT_THROW(predict_warp(-0.1, 0.0, {6, 6, 1, 0}, 10, 0), PointAtInfinity);
}

TEST(Predictor, TranslationPhaseLaw) {
    EXPECT_EQ(predict_translation_phase(0, 0, 25, 25, 6, 6), 0.0);
    EXPECT_NEAR(predict_translation_phase(25, 0, 25, 25, 6, 6), 0.0, 1e-9);
    EXPECT_NEAR(predict_translation_phase(6, 6, 25, 25, 6, 6), 316.8, 1e-9);
    EXPECT_NEAR(predict_translation_phase(6, 6, 25, 25, 6, -6), 0.0, 1e-9);
    const auto [ox, oy] = window_offset_pixels(6, 6);
    EXPECT_EQ(ox, -6);
    EXPECT_EQ(oy, 6);
}

TEST(Predictor, TranslationWindowMatchesDftOracle) {
    const auto big = tile_periodic(encode_peaks(default_pattern()), 3, 3);
    const auto base = center_spectrum(dft_forward_direct(crop_window(big, 25, 25, 25, 25)));
    for (auto [tx, ty] : {std::pair{6, 6}, {3, 0}, {11, 19}}) {
        const auto [ox, oy] = window_offset_pixels(tx, ty);
        const auto f = center_spectrum(dft_forward_direct(crop_window(big, 25 + ox, 25 + oy, 25, 25)));
        for (auto [u, v] : {std::pair{6, 6}, {6, -6}, {-6, 6}}) {
            const double measured = phase(f, u, v) - phase(base, u, v);
            EXPECT_NEAR(wrap_degrees(measured - predict_translation_phase(tx, ty, 25, 25, u, v)), 0.0, 1e-9);
        }
    }
}

TEST(Predictor, FrequencyMapPhaseMatchesWarpedTiling) {
    // Push the tiling by an integer pixel translation and read the center tile.
    const auto big = tile_periodic(encode_peaks(default_pattern()), 3, 3);
    const auto base = center_spectrum(dft_forward(crop_window(big, 25, 25, 25, 25)));
    for (auto [tx, ty] : {std::pair{6.0, 6.0}, {2.0, -5.0}}) {
        const auto a = translation_transform(tx, ty);
        const auto moved = warp_image(big, a, Interpolation::Bilinear, Anchor::corner());
        const auto f = center_spectrum(dft_forward(crop_window(moved, 25, 25, 25, 25)));
        const auto m = build_frequency_map(a, 25, 25);
        for (auto [u, v] : {std::pair{6, 6}, {6, -6}}) {
            EXPECT_NEAR(std::abs(value_at(f, u, v)), 10000.0, 1e-6);
            const double measured = phase(f, u, v) - phase(base, u, v);
            EXPECT_NEAR(wrap_degrees(measured - m.phase_shift_deg(u, v)), 0.0, 1e-9) << u << "," << v;
        }
    }
}

TEST(Predictor, AliasingWrapsIntoRange) {
    const auto a = build_transform(with({{&TransformCoefficients::chi_x, 0.4}}));
    const auto p = predict_peak(build_frequency_map(a, 25, 25), {6, 6, 1, 0});
    EXPECT_TRUE(p.aliased);
    EXPECT_NEAR(p.peak.u, 15.0 - 25.0, 1e-9);
    EXPECT_NEAR(p.peak.v, 6.0, 1e-9);
    EXPECT_THROW(predict_peak(build_frequency_map(a, 25, 25), {13, 0, 1, 0}), OutOfBounds);
}

TEST(Predictor, BinningRoundsHalfAway) {
    EXPECT_EQ(bin_peak(4.8, 6.0), (BinnedPeak{5, 6}));
    EXPECT_EQ(bin_peak(7.5, -7.5), (BinnedPeak{8, -8}));
    EXPECT_EQ(bin_peak(2.196, 8.196), (BinnedPeak{2, 8}));
    EXPECT_EQ(bin_peak(6.003, 5.997), (BinnedPeak{6, 6}));
}
