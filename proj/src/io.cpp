#include "sftp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sftp/errors.hpp"

namespace sftp::io {

namespace fs = std::filesystem;

std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    if (std::string(buf) == "-0") return "0";
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("cannot write " + path.string());
}

void write_image_csv(const SpatialImage& image, const fs::path& path) {
    image.validate();
    std::ostringstream os;
    os.precision(17);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) os << (x ? "," : "") << image.at(x, y);
        os << '\n';
    }
    write_text(path, os.str());
}

SpatialImage read_image_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    std::vector<double> values;
    int width = -1;
    int height = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::stringstream ls(line);
        std::string cell;
        int count = 0;
        while (std::getline(ls, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw InvalidArgument("bad number '" + cell + "' in " + path.string());
            }
            ++count;
        }
        if (width < 0) width = count;
        if (count != width) throw InvalidArgument("ragged rows in " + path.string());
        ++height;
    }
    if (width <= 0) throw InvalidArgument("empty image file " + path.string());
    SpatialImage img(width, height);
    img.samples = std::move(values);
    img.fill_value = 0.5 * (img.min() + img.max());
    img.validate();
    return img;
}

namespace {
void write_pgm_values(const std::vector<double>& scaled, int w, int h, const fs::path& path) {
    std::string data = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    for (double v : scaled) data.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v))));
    write_text(path, data);
}
}  // namespace

void write_pgm(const SpatialImage& image, const fs::path& path) {
    const SpatialImage n = normalize_minmax(image, 0.0, 255.0);
    write_pgm_values(n.samples, n.width, n.height, path);
}

void write_pgm(const RealGrid& grid, const fs::path& path) {
    const RealGrid n = normalize_minmax(grid, 0.0, 255.0);
    write_pgm_values(n.values, n.width, n.height, path);
}

void write_spectrum_csv(const ComplexSpectrum& spectrum, const fs::path& path) {
    std::ostringstream os;
    os.precision(17);
    os << "u,v,re,im\n";
    for (int r = 0; r < spectrum.height; ++r)
        for (int c = 0; c < spectrum.width; ++c) {
            const auto [u, v] = storage_to_cartesian(spectrum.width, spectrum.height, spectrum.centered, c, r);
            const Complex z = spectrum.at(c, r);
            os << u << ',' << v << ',' << z.real() << ',' << z.imag() << '\n';
        }
    write_text(path, os.str());
}

PatternSpec pattern_from_json(const json& j) {
    PatternSpec s;
    s.width = j.value("M", 25);
    s.height = j.value("N", 25);
    if (j.contains("peaks")) {
        for (const auto& p : j.at("peaks")) {
            FrequencyPeak fp;
            fp.u = p.at("u").get<double>();
            fp.v = p.at("v").get<double>();
            fp.amplitude = p.value("amp", 10000.0);
            fp.phase_deg = p.value("phase_deg", 0.0);
            s.peaks.push_back(fp);
        }
    } else {
        s.peaks = default_pattern().peaks;
    }
    s.validate();
    return s;
}

json pattern_to_json(const PatternSpec& spec) {
    json peaks = json::array();
    for (const auto& p : spec.peaks)
        peaks.push_back({{"u", p.u}, {"v", p.v}, {"amp", p.amplitude}, {"phase_deg", p.phase_deg}});
    return {{"M", spec.width}, {"N", spec.height}, {"peaks", peaks}};
}

PerspectiveTransform transform_from_json(const json& j) {
    auto from_array = [](const json& arr) {
        if (!arr.is_array() || arr.size() != 9) throw InvalidArgument("transform array needs 9 values");
        Mat3 a;
        for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = arr.at(i).get<double>();
        return PerspectiveTransform(a);
    };
    if (j.is_array()) return from_array(j);
    if (!j.is_object()) throw InvalidArgument("transform must be an array or an object");
    if (j.contains("matrix")) return from_array(j.at("matrix"));
    if (j.contains("theta_deg")) return rotation_transform(j.at("theta_deg").get<double>());
    static const char* known[] = {"chi_x", "chi_y", "chi_z", "psi_yx", "psi_xy",
                                  "psi_xz", "psi_yz", "tau_x", "tau_y"};
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw InvalidArgument("unknown transform coefficient '" + key + "'");
    }
    TransformCoefficients c;
    c.chi_x = j.value("chi_x", 1.0);
    c.chi_y = j.value("chi_y", 1.0);
    c.chi_z = j.value("chi_z", 1.0);
    c.psi_yx = j.value("psi_yx", 0.0);
    c.psi_xy = j.value("psi_xy", 0.0);
    c.psi_xz = j.value("psi_xz", 0.0);
    c.psi_yz = j.value("psi_yz", 0.0);
    c.tau_x = j.value("tau_x", 0.0);
    c.tau_y = j.value("tau_y", 0.0);
    return build_transform(c);
}

json transform_to_json(const PerspectiveTransform& a) {
    json m = json::array();
    for (int i = 0; i < 9; ++i) m.push_back(a.matrix()(i / 3, i % 3));
    return {{"matrix", m}};
}

void write_detections_csv(const std::vector<PeakDetection>& peaks, const fs::path& path) {
    std::ostringstream os;
    os << "u,v,ncc,magnitude\n";
    for (const auto& p : peaks) os << p.u << ',' << p.v << ',' << fmt6(p.ncc_score) << ',' << fmt6(p.magnitude) << '\n';
    write_text(path, os.str());
}

json estimate_to_json(const EstimatedTransform& est) {
    json coeffs = json::object();
    for (const auto& [name, value] : est.coefficients) coeffs[name] = value;
    const auto& L = est.linear;
    return {{"kind", est.kind},
            {"coefficients", coeffs},
            {"linear", {L(0, 0), L(0, 1), L(1, 0), L(1, 1)}},
            {"residual", est.residual}};
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
}

}  // namespace sftp::io
