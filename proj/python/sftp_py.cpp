#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sftp/errors.hpp"
#include "sftp/harness.hpp"

namespace py = pybind11;
using namespace sftp;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

SpatialImage image_from(const RealArray& a) {
    if (a.ndim() != 2) throw InvalidArgument("expected a 2-D array (rows, columns)");
    SpatialImage img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    std::copy(a.data(), a.data() + a.size(), img.samples.begin());
    img.fill_value = 0.5 * (img.min() + img.max());
    return img;
}

RealArray to_array(const std::vector<double>& v, int w, int h) {
    RealArray out({h, w});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<std::complex<double>> to_array(const ComplexSpectrum& s) {
    py::array_t<std::complex<double>> out({s.height, s.width});
    std::copy(s.samples.begin(), s.samples.end(), out.mutable_data());
    return out;
}

PerspectiveTransform transform_from(const py::object& t) {
    if (py::isinstance<PerspectiveTransform>(t)) return t.cast<PerspectiveTransform>();
    const auto a = t.cast<RealArray>();
    if (a.ndim() != 2 || a.shape(0) != 3 || a.shape(1) != 3) throw InvalidArgument("expected a 3x3 matrix");
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = a.at(i, j);
    return PerspectiveTransform(m);
}

Interpolation scheme_from(const std::string& s) {
    if (s == "bilinear") return Interpolation::Bilinear;
    if (s == "sum") return Interpolation::ArithmeticSum;
    throw InvalidArgument("interpolation must be 'bilinear' or 'sum'");
}

PatternSpec pattern_from(int width, int height, const std::vector<std::tuple<double, double, double, double>>& peaks) {
    PatternSpec spec;
    spec.width = width;
    spec.height = height;
    for (const auto& [u, v, a, p] : peaks) spec.peaks.push_back({u, v, a, p});
    return spec;
}

py::dict record_dict(const SweepRecord& r) {
    py::list peaks;
    for (const auto& p : r.peaks) {
        py::dict d;
        d["base"] = py::make_tuple(p.base.u, p.base.v);
        d["captured"] = p.captured ? py::object(py::make_tuple(p.capture.u, p.capture.v)) : py::none();
        d["predicted"] = py::make_tuple(p.predicted_u, p.predicted_v);
        d["binned"] = py::make_tuple(p.binned.u, p.binned.v);
        d["captured_phase"] = p.captured_phase;
        d["captured_magnitude"] = p.captured_magnitude;
        d["predicted_phase"] = p.predicted_phase;
        peaks.append(d);
    }
    py::dict out;
    out["coefficient"] = r.coefficient;
    out["peaks"] = peaks;
    out["congruent"] = r.congruent;
    out["degraded"] = r.degraded;
    return out;
}

}  // namespace

PYBIND11_MODULE(_sftp, m) {
    m.doc() = "Spatial-Fourier transform pair simulation: encoding, warping, prediction and detection.";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<SingularTransform>(m, "SingularTransform", PyExc_ValueError);

    py::class_<PerspectiveTransform>(m, "PerspectiveTransform")
        .def(py::init<>())
        .def(py::init([](const RealArray& a) { return transform_from(a); }))
        .def_property_readonly("matrix",
                               [](const PerspectiveTransform& t) {
                                   RealArray out({3, 3});
                                   for (int i = 0; i < 3; ++i)
                                       for (int j = 0; j < 3; ++j) out.mutable_at(i, j) = t.matrix()(i, j);
                                   return out;
                               })
        .def("inverse", [](const PerspectiveTransform& t) { return PerspectiveTransform(t.inverse()); })
        .def("__matmul__", &PerspectiveTransform::operator*);

    m.def(
        "build_transform",
        [](double chi_x, double chi_y, double chi_z, double psi_yx, double psi_xy, double psi_xz, double psi_yz,
           double tau_x, double tau_y) {
            return build_transform({chi_x, chi_y, chi_z, psi_yx, psi_xy, psi_xz, psi_yz, tau_x, tau_y});
        },
        py::kw_only(), py::arg("chi_x") = 1.0, py::arg("chi_y") = 1.0, py::arg("chi_z") = 1.0,
        py::arg("psi_yx") = 0.0, py::arg("psi_xy") = 0.0, py::arg("psi_xz") = 0.0, py::arg("psi_yz") = 0.0,
        py::arg("tau_x") = 0.0, py::arg("tau_y") = 0.0);
    m.def("rotation_transform", &rotation_transform, py::arg("theta_deg"));

    m.def(
        "default_peaks",
        [] {
            std::vector<std::tuple<double, double, double, double>> out;
            for (const auto& p : default_pattern().peaks) out.emplace_back(p.u, p.v, p.amplitude, p.phase_deg);
            return out;
        },
        "(u, v, amplitude, phase_deg) of the default four-peak pattern");

    m.def(
        "encode",
        [](const std::optional<std::vector<std::tuple<double, double, double, double>>>& peaks, int width,
           int height) {
            const auto spec = peaks ? pattern_from(width, height, *peaks) : default_pattern();
            const auto img = encode_peaks(spec);
            return to_array(img.samples, img.width, img.height);
        },
        py::arg("peaks") = py::none(), py::arg("width") = 25, py::arg("height") = 25,
        "Spatial pattern whose spectrum holds the listed (u, v, amplitude, phase_deg) peaks.");

    m.def(
        "dft",
        [](const RealArray& a, bool centered) {
            auto s = dft_forward(image_from(a));
            return to_array(centered ? center_spectrum(s) : s);
        },
        py::arg("image"), py::arg("centered") = true,
        "2-D DFT. Centered output holds signed index (kx, ky) at [ky + N//2, kx + M//2]; "
        "Cartesian u is -kx.");

    m.def(
        "warp",
        [](const RealArray& a, const py::object& t, const std::string& interpolation,
           std::optional<std::pair<double, double>> anchor) {
            const auto img = image_from(a);
            std::optional<Anchor> o;
            if (anchor) o = Anchor{anchor->first, anchor->second};
            const auto out = warp_image(img, transform_from(t), scheme_from(interpolation), o);
            return to_array(out.samples, out.width, out.height);
        },
        py::arg("image"), py::arg("transform"), py::arg("interpolation") = "bilinear",
        py::arg("anchor") = py::none());

    m.def(
        "predict_peak",
        [](const py::object& t, double u, double v, int width, int height) {
            const auto p = predict_peak(build_frequency_map(transform_from(t), width, height), {u, v, 1.0, 0.0});
            return py::make_tuple(p.peak.u, p.peak.v, p.peak.phase_deg, p.aliased);
        },
        py::arg("transform"), py::arg("u"), py::arg("v"), py::arg("width") = 25, py::arg("height") = 25,
        "(u', v', phase_shift_deg, aliased) for a peak at Cartesian (u, v).");

    m.def(
        "detect_peaks",
        [](const RealArray& image, int k) {
            const auto cap = capture_image(image_from(image), k);
            py::list out;
            for (const auto& p : cap.detection.peaks) out.append(py::make_tuple(p.u, p.v, p.ncc_score, p.magnitude));
            return py::make_tuple(out, cap.detection.degraded);
        },
        py::arg("image"), py::arg("k") = 4,
        "Top-k spectral peaks of a spatial image as ([(u, v, ncc, magnitude)], degraded).");

    m.def(
        "run_sweep",
        [](const std::string& kind, std::optional<double> start, std::optional<double> stop,
           std::optional<double> step, const std::string& interpolation) {
            auto cfg = SweepConfig::standard(parse_kind(kind));
            if (start) cfg.start = *start;
            if (stop) cfg.stop = *stop;
            if (step) cfg.step = *step;
            cfg.interpolation = scheme_from(interpolation);
            py::list out;
            for (const auto& r : run_sweep(cfg)) out.append(record_dict(r));
            return out;
        },
        py::arg("kind"), py::arg("start") = py::none(), py::arg("stop") = py::none(), py::arg("step") = py::none(),
        py::arg("interpolation") = "bilinear");

    m.def(
        "reproduce_table",
        [](int id, const std::string& interpolation) {
            const auto t = reproduce_table(id, scheme_from(interpolation));
            py::list rows;
            for (const auto& r : t.rows) {
                py::dict d;
                d["label"] = r.label;
                std::vector<std::pair<int, int>> cap;
                for (const auto& b : r.captured) cap.emplace_back(b.u, b.v);
                d["captured"] = cap;
                d["calculated"] = r.calculated;
                d["estimated_kind"] = r.estimated.kind;
                d["estimated"] = r.estimated.coefficients;
                d["captured_match"] = r.captured_match;
                d["calculated_match"] = r.calculated_match;
                rows.append(d);
            }
            return rows;
        },
        py::arg("table_id"), py::arg("interpolation") = "bilinear");
}
