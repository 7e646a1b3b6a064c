#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sftp/dft.hpp"
#include "sftp/errors.hpp"

using namespace sftp;

namespace {

SpatialImage random_image(int w, int h, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(-50.0, 50.0);
    SpatialImage img(w, h);
    for (double& s : img.samples) s = d(rng);
    return img;
}

double max_diff(const ComplexSpectrum& a, const ComplexSpectrum& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) e = std::max(e, std::abs(a.samples[i] - b.samples[i]));
    return e;
}

}  // namespace

TEST(Dft, SeparableMatchesDirectSummation) {
    for (auto [w, h] : {std::pair{1, 1}, {2, 3}, {5, 4}, {8, 8}, {13, 7}, {25, 25}}) {
        const auto img = random_image(w, h, static_cast<unsigned>(w * 31 + h));
        EXPECT_LT(max_diff(dft_forward(img), dft_forward_direct(img)), 1e-9) << w << "x" << h;
    }
}

TEST(Dft, SingleSampleByHand) {
    // f = delta at (1, 0) on 4x1: F(k) = e^{-i 2 pi k / 4}
    SpatialImage img(4, 1);
    img.at(1, 0) = 1.0;
    const auto f = dft_forward(img);
    for (int k = 0; k < 4; ++k) {
        const Complex expect = std::polar(1.0, -2.0 * std::numbers::pi * k / 4.0);
        EXPECT_NEAR(std::abs(f.at(k, 0) - expect), 0.0, 1e-12);
    }
}

TEST(Dft, RoundTripAndImagResidual) {
    const auto img = random_image(11, 6, 3);
    double resid = -1.0;
    const auto back = dft_inverse(dft_forward(img), &resid);
    for (std::size_t i = 0; i < img.samples.size(); ++i) EXPECT_NEAR(back.samples[i], img.samples[i], 1e-9);
    EXPECT_GE(resid, 0.0);
    EXPECT_LT(resid, 1e-12);
    const auto back2 = dft_inverse_direct(dft_forward_direct(img));
    for (std::size_t i = 0; i < img.samples.size(); ++i) EXPECT_NEAR(back2.samples[i], img.samples[i], 1e-9);
}

TEST(Dft, Linearity) {
    const auto a = random_image(7, 9, 1), b = random_image(7, 9, 2);
    SpatialImage c(7, 9);
    for (std::size_t i = 0; i < c.samples.size(); ++i) c.samples[i] = 2.0 * a.samples[i] - 0.5 * b.samples[i];
    const auto fa = dft_forward(a), fb = dft_forward(b), fc = dft_forward(c);
    for (std::size_t i = 0; i < fc.samples.size(); ++i)
        EXPECT_NEAR(std::abs(fc.samples[i] - (2.0 * fa.samples[i] - 0.5 * fb.samples[i])), 0.0, 1e-9);
}

TEST(Dft, Parseval) {
    const auto img = random_image(10, 12, 4);
    double es = 0.0, ef = 0.0;
    for (double s : img.samples) es += s * s;
    for (const auto& z : dft_forward(img).samples) ef += std::norm(z);
    EXPECT_NEAR(ef / img.samples.size(), es, 1e-9 * es);
}

TEST(Dft, CircularShiftOnlyChangesPhase) {
    const auto img = random_image(9, 9, 5);
    SpatialImage shifted(9, 9);
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 9; ++x) shifted.at((x + 2) % 9, (y + 7) % 9) = img.at(x, y);
    const auto f = dft_forward(img), g = dft_forward(shifted);
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        EXPECT_NEAR(std::abs(f.samples[i]), std::abs(g.samples[i]), 1e-9);
}

TEST(Dft, CenteringIndexArithmetic) {
    for (auto [w, h] : {std::pair{25, 25}, {4, 6}, {5, 8}}) {
        ComplexSpectrum s(w, h);
        for (std::size_t i = 0; i < s.samples.size(); ++i) s.samples[i] = Complex(static_cast<double>(i), 0.0);
        const auto c = center_spectrum(s);
        EXPECT_TRUE(c.centered);
        for (int row = 0; row < h; ++row)
            for (int col = 0; col < w; ++col) {
                const int kx = col - w / 2, ky = row - h / 2;
                const int src_col = ((kx % w) + w) % w, src_row = ((ky % h) + h) % h;
                EXPECT_EQ(c.at(col, row), s.at(src_col, src_row));
            }
        const auto u = uncenter_spectrum(c);
        EXPECT_FALSE(u.centered);
        EXPECT_EQ(u.samples, s.samples);
    }
}

TEST(Dft, CartesianLabelsMirrorColumns) {
    // (u, v) = (6, 6) sits at signed column index -6, row index 6.
    const auto st = cartesian_to_storage(25, 25, true, 6, 6);
    EXPECT_EQ(st.col, 12 - 6);
    EXPECT_EQ(st.row, 12 + 6);
    const auto [u, v] = storage_to_cartesian(25, 25, true, st.col, st.row);
    EXPECT_EQ(u, 6);
    EXPECT_EQ(v, 6);
    const auto raw = cartesian_to_storage(25, 25, false, 6, 6);
    EXPECT_EQ(raw.col, 25 - 6);
    EXPECT_EQ(raw.row, 6);
    EXPECT_TRUE(cartesian_in_bounds(25, 25, 12, -12));
    EXPECT_FALSE(cartesian_in_bounds(25, 25, 13, 0));
    EXPECT_EQ(signed_index_range(25), std::make_pair(-12, 12));
    EXPECT_EQ(signed_index_range(4), std::make_pair(-2, 1));
}

TEST(Dft, ConjugateSymmetryOfRealInput) {
    const auto img = random_image(6, 5, 6);
    const auto f = dft_forward(img);
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 6; ++c)
            EXPECT_NEAR(std::abs(f.at(c, r) - std::conj(f.at((6 - c) % 6, (5 - r) % 5))), 0.0, 1e-9);
}

TEST(Dft, PhaseHelpers) {
    EXPECT_DOUBLE_EQ(wrap_degrees(180.0), -180.0);
    EXPECT_DOUBLE_EQ(wrap_degrees(-180.0), -180.0);
    EXPECT_NEAR(wrap_degrees(316.8), -43.2, 1e-12);
    EXPECT_NEAR(wrap_degrees(-725.0), -5.0, 1e-12);
    EXPECT_NEAR(phase_of(Complex(0.0, 2.0)), 90.0, 1e-12);
    EXPECT_THROW(phase_of(Complex(1e-7, 0.0)), UndefinedPhase);
}

TEST(Dft, ValueAtUsesCartesianLabels) {
    ComplexSpectrum s(25, 25, true);
    const auto st = cartesian_to_storage(25, 25, true, 3, -4);
    s.at(st.col, st.row) = Complex(1.0, 1.0);
    EXPECT_EQ(value_at(s, 3, -4), Complex(1.0, 1.0));
    EXPECT_NEAR(phase(s, 3, -4), 45.0, 1e-12);
}

TEST(Dft, NormalizeAndDisplay) {
    SpatialImage img(3, 1);
    img.samples = {2.0, 4.0, 6.0};
    const auto n = normalize_minmax(img, 0.0, 255.0);
    EXPECT_DOUBLE_EQ(n.samples[0], 0.0);
    EXPECT_DOUBLE_EQ(n.samples[1], 127.5);
    EXPECT_DOUBLE_EQ(n.samples[2], 255.0);
    SpatialImage flat(2, 2);
    flat.samples.assign(4, 3.0);
    for (double s : normalize_minmax(flat, 10.0, 20.0).samples) EXPECT_DOUBLE_EQ(s, 10.0);

    SpatialImage dc(5, 5);
    dc.samples.assign(25, 1.0);
    dc.at(1, 1) = 3.0;
    const auto disp = spectrum_display(center_spectrum(dft_forward(dc)));
    EXPECT_DOUBLE_EQ(disp.at(2, 2), 0.0);
    double mx = 0.0;
    for (double v : disp.values) mx = std::max(mx, v);
    EXPECT_DOUBLE_EQ(mx, 255.0);
}

TEST(Dft, RejectsBadInput) {
    SpatialImage bad(2, 2);
    bad.samples.pop_back();
    EXPECT_THROW(dft_forward(bad), InvalidArgument);
    ComplexSpectrum c(3, 3, true);
    EXPECT_THROW(dft_inverse(c), InvalidArgument);
    SpatialImage nan(1, 1);
    nan.samples[0] = std::nan("");
    EXPECT_THROW(nan.validate(), InvalidArgument);
}

TEST(Dft, SmallExamples) {
    SpatialImage one(1, 1);
    one.samples[0] = 4.5;
    EXPECT_EQ(dft_forward(one).samples[0], Complex(4.5, 0.0));

    SpatialImage k(5, 4);
    k.samples.assign(20, 2.0);
    const auto f = dft_forward(k);
    EXPECT_NEAR(std::abs(f.at(0, 0) - Complex(40.0, 0.0)), 0.0, 1e-9);
    for (std::size_t i = 1; i < f.samples.size(); ++i) EXPECT_NEAR(std::abs(f.samples[i]), 0.0, 1e-9);

    ComplexSpectrum dc(5, 4);
    dc.at(0, 0) = Complex(20.0, 0.0);
    for (double s : dft_inverse(dc).samples) EXPECT_NEAR(s, 1.0, 1e-12);

    ComplexSpectrum m(2, 1);
    m.samples = {Complex(3.0, 4.0), Complex(0.0, 0.0)};
    const auto mag = magnitude(m);
    EXPECT_DOUBLE_EQ(mag.values[0], 5.0);
    EXPECT_DOUBLE_EQ(mag.values[1], 0.0);
}

TEST(Dft, UncenteredBinsLandOnSignedIndices) {
    ComplexSpectrum s(25, 25);
    s.at(6, 6) = Complex(1.0, 0.0);
    s.at(19, 19) = Complex(2.0, 0.0);
    const auto c = center_spectrum(s);
    EXPECT_EQ(c.at(12 + 6, 12 + 6), Complex(1.0, 0.0));
    EXPECT_EQ(c.at(12 - 6, 12 - 6), Complex(2.0, 0.0));
    EXPECT_EQ(c.at(12, 12), s.at(0, 0));
    ComplexSpectrum e(4, 6);
    for (std::size_t i = 0; i < e.samples.size(); ++i) e.samples[i] = Complex(static_cast<double>(i), 0.0);
    auto twice = center_spectrum(e);
    twice.centered = false;
    EXPECT_EQ(center_spectrum(twice).samples, e.samples);
}
