#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sftp/errors.hpp"
#include "sftp/io.hpp"

using namespace sftp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "sftp_io_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST(Io, Fmt6) {
    EXPECT_EQ(io::fmt6(1.0), "1");
    EXPECT_EQ(io::fmt6(2.19615242), "2.19615");
    EXPECT_EQ(io::fmt6(-0.0), "0");
    EXPECT_EQ(io::fmt6(1e-7), "1e-07");
}

TEST(Io, ImageCsvRoundTripIsExact) {
    const auto img = encode_peaks(default_pattern());
    const auto p = scratch("img.csv");
    io::write_image_csv(img, p);
    const auto back = io::read_image_csv(p);
    EXPECT_EQ(back.width, 25);
    EXPECT_EQ(back.height, 25);
    EXPECT_EQ(back.samples, img.samples);
    EXPECT_DOUBLE_EQ(back.fill_value, img.fill_value);
}

TEST(Io, ImageCsvRejectsBadInput) {
    const auto ragged = scratch("ragged.csv");
    io::write_text(ragged, "1,2,3\n4,5\n");
    EXPECT_THROW(io::read_image_csv(ragged), InvalidArgument);
    const auto junk = scratch("junk.csv");
    io::write_text(junk, "1,x\n");
    EXPECT_THROW(io::read_image_csv(junk), InvalidArgument);
    EXPECT_THROW(io::read_image_csv(scratch("missing.csv")), Error);
}

TEST(Io, PgmHeaderAndRange) {
    SpatialImage img(3, 2);
    img.samples = {0, 1, 2, 3, 4, 5};
    const auto p = scratch("img.pgm");
    io::write_pgm(img, p);
    const auto data = slurp(p);
    const std::string header = "P5\n3 2\n255\n";
    ASSERT_EQ(data.size(), header.size() + 6);
    EXPECT_EQ(data.substr(0, header.size()), header);
    EXPECT_EQ(static_cast<unsigned char>(data[header.size()]), 0);
    EXPECT_EQ(static_cast<unsigned char>(data.back()), 255);
}

TEST(Io, SpectrumCsvUsesCartesianLabels) {
    ComplexSpectrum s(3, 3, true);
    const auto st = cartesian_to_storage(3, 3, true, 1, -1);
    s.at(st.col, st.row) = Complex(2.0, -1.0);
    const auto p = scratch("spec.csv");
    io::write_spectrum_csv(s, p);
    const auto text = slurp(p);
    EXPECT_EQ(text.substr(0, text.find('\n')), "u,v,re,im");
    EXPECT_NE(text.find("\n1,-1,2,-1\n"), std::string::npos);
}

TEST(Io, PatternJson) {
    const auto spec = default_pattern();
    const auto back = io::pattern_from_json(io::pattern_to_json(spec));
    ASSERT_EQ(back.peaks.size(), spec.peaks.size());
    for (std::size_t i = 0; i < spec.peaks.size(); ++i) {
        EXPECT_EQ(back.peaks[i].u, spec.peaks[i].u);
        EXPECT_EQ(back.peaks[i].amplitude, spec.peaks[i].amplitude);
    }
    EXPECT_EQ(io::pattern_from_json(io::json::object()).peaks.size(), 4u);
    const auto bad = io::json::parse(R"({"M": 25, "N": 25, "peaks": [{"u": 6, "v": 6}]})");
    EXPECT_THROW(io::pattern_from_json(bad), InvalidArgument);
}

TEST(Io, TransformJsonForms) {
    const auto named = io::transform_from_json(io::json::parse(R"({"chi_x": 1.25, "psi_yx": 0.1, "tau_y": 3})"));
    EXPECT_EQ(named.chi_x(), 1.25);
    EXPECT_EQ(named.psi_yx(), 0.1);
    EXPECT_EQ(named.tau_y(), 3.0);
    const auto arr = io::transform_from_json(io::json::parse("[1,0,0, 0,2,0, 0,0,1]"));
    EXPECT_EQ(arr.chi_y(), 2.0);
    const auto mat = io::transform_from_json(io::json::parse(R"({"matrix": [1,0.3,0, 0,1,0, 0,0,1]})"));
    EXPECT_EQ(mat.psi_yx(), 0.3);
    const auto rot = io::transform_from_json(io::json::parse(R"({"theta_deg": 30})"));
    EXPECT_TRUE(rot.matrix().isApprox(rotation_transform(30.0).matrix()));
    EXPECT_EQ(io::transform_from_json(io::transform_to_json(named)).matrix(), named.matrix());

    EXPECT_THROW(io::transform_from_json(io::json::parse(R"({"chi_q": 1})")), InvalidArgument);
    EXPECT_THROW(io::transform_from_json(io::json::parse("[1,2]")), InvalidArgument);
    EXPECT_THROW(io::transform_from_json(io::json::parse(R"({"chi_x": 0})")), SingularTransform);
}

TEST(Io, DetectionsAndEstimate) {
    const auto p = scratch("det.csv");
    io::write_detections_csv({{6, 6, 1.0, 10000.0}, {-6, -6, 0.5, 9000.0}}, p);
    const auto text = slurp(p);
    EXPECT_EQ(text.substr(0, text.find('\n')), "u,v,ncc,magnitude");
    EXPECT_NE(text.find("\n-6,-6,0.5,9000"), std::string::npos);

    EstimatedTransform e;
    e.kind = "rotation";
    e.coefficients = {{"theta_deg", 30.0}};
    const auto j = io::estimate_to_json(e);
    EXPECT_EQ(j.at("kind"), "rotation");
    EXPECT_EQ(j.at("coefficients").at("theta_deg"), 30.0);
}

TEST(Io, ReadJsonErrors) {
    const auto p = scratch("bad.json");
    io::write_text(p, "{not json");
    EXPECT_THROW(io::read_json(p), InvalidArgument);
    EXPECT_THROW(io::read_json(scratch("none.json")), Error);
}
