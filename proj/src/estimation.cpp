#include "sftp/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sftp/errors.hpp"

namespace sftp {

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

int axis_distance(int a, int b, int n, bool periodic) {
    const int d = std::abs(a - b);
    return periodic ? std::min(d, n - d) : d;
}

}  // namespace

Template impulse_template(int width, int height) {
    if (width <= 0 || height <= 0) throw InvalidArgument("template dimensions must be positive");
    Template t{width, height, std::vector<double>(static_cast<std::size_t>(width) * height, 0.0)};
    t.values[static_cast<std::size_t>(height / 2) * width + width / 2] = 1.0;
    return t;
}

RealGrid ncc_map(const RealGrid& mag, const Template& tmpl, bool periodic) {
    if (tmpl.width <= 0 || tmpl.height <= 0 || tmpl.values.size() != static_cast<std::size_t>(tmpl.width) * tmpl.height)
        throw InvalidArgument("malformed template");
    if (tmpl.width > mag.width || tmpl.height > mag.height)
        throw InvalidArgument("template larger than the magnitude grid");

    const std::size_t count = tmpl.values.size();
    double tmean = 0.0;
    for (double t : tmpl.values) tmean += t;
    tmean /= static_cast<double>(count);
    std::vector<double> tz(count);
    double tnorm = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        tz[i] = tmpl.values[i] - tmean;
        tnorm += tz[i] * tz[i];
    }
    tnorm = std::sqrt(tnorm);

    RealGrid out{mag.width, mag.height,
                 std::vector<double>(mag.values.size(), std::numeric_limits<double>::quiet_NaN()), mag.centered};
    const int hx = tmpl.width / 2;
    const int hy = tmpl.height / 2;
    std::vector<double> window(count);
    for (int r = 0; r < mag.height; ++r) {
        for (int c = 0; c < mag.width; ++c) {
            if (!periodic && (c - hx < 0 || r - hy < 0 || c - hx + tmpl.width > mag.width ||
                              r - hy + tmpl.height > mag.height))
                continue;
            double wmean = 0.0;
            for (int j = 0; j < tmpl.height; ++j)
                for (int i = 0; i < tmpl.width; ++i) {
                    const double m = mag.at(wrap(c - hx + i, mag.width), wrap(r - hy + j, mag.height));
                    window[static_cast<std::size_t>(j) * tmpl.width + i] = m;
                    wmean += m;
                }
            wmean /= static_cast<double>(count);
            double num = 0.0;
            double wnorm = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                const double d = window[i] - wmean;
                num += d * tz[i];
                wnorm += d * d;
            }
            const double den = std::sqrt(wnorm) * tnorm;
            out.at(c, r) = den > 0.0 ? num / den : 0.0;
        }
    }
    return out;
}

DetectionResult detect_peaks(const RealGrid& mag, const Template& tmpl, int k, const DetectOptions& opt) {
    if (k < 1) throw InvalidArgument("k must be at least 1");
    if (!mag.centered) throw InvalidArgument("peak detection expects a centered magnitude grid");
    if (opt.nms_radius < 0) throw InvalidArgument("suppression radius must be non-negative");
    const RealGrid score = ncc_map(mag, tmpl, opt.periodic);
    const int zc = mag.width / 2;
    const int zr = mag.height / 2;
    const int rad = opt.nms_radius;

    // Scores equal up to rounding noise count as ties.
    auto rank = [](double s) { return std::nearbyint(s * 1e12); };

    struct Candidate {
        int col, row;
        PeakDetection det;
    };
    std::vector<Candidate> cands;
    for (int r = 0; r < mag.height; ++r) {
        for (int c = 0; c < mag.width; ++c) {
            if ((c == zc && r == zr) || std::isnan(score.at(c, r))) continue;
            const double s = rank(score.at(c, r));
            bool is_max = true;
            bool above_any = false;  // flat plateaus are not peaks
            for (int dy = -rad; dy <= rad && is_max; ++dy)
                for (int dx = -rad; dx <= rad; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    int nc = c + dx, nr = r + dy;
                    if (opt.periodic) {
                        nc = wrap(nc, mag.width);
                        nr = wrap(nr, mag.height);
                    } else if (nc < 0 || nr < 0 || nc >= mag.width || nr >= mag.height) {
                        continue;
                    }
                    if (nc == zc && nr == zr) continue;
                    const double ns = rank(score.at(nc, nr));
                    if (std::isnan(ns)) continue;
                    if (ns > s) {
                        is_max = false;
                        break;
                    }
                    if (ns < s) above_any = true;
                }
            if (!is_max || !above_any) continue;
            const auto [u, v] = storage_to_cartesian(mag.width, mag.height, true, c, r);
            cands.push_back({c, r, {u, v, score.at(c, r), mag.at(c, r)}});
        }
    }
    std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
        if (rank(a.det.ncc_score) != rank(b.det.ncc_score)) return rank(a.det.ncc_score) > rank(b.det.ncc_score);
        if (a.det.u != b.det.u) return a.det.u < b.det.u;
        return a.det.v < b.det.v;
    });

    DetectionResult res;
    std::vector<const Candidate*> kept;
    for (const auto& cand : cands) {
        if (static_cast<int>(kept.size()) == k) break;
        bool clear = true;
        for (const Candidate* prev : kept) {
            if (axis_distance(cand.col, prev->col, mag.width, opt.periodic) <= rad &&
                axis_distance(cand.row, prev->row, mag.height, opt.periodic) <= rad) {
                clear = false;
                break;
            }
        }
        if (!clear) continue;
        kept.push_back(&cand);
        res.peaks.push_back(cand.det);
    }
    res.degraded = static_cast<int>(res.peaks.size()) < k;
    return res;
}

DetectionResult detect_peaks(const RealGrid& mag, int k, const DetectOptions& opt) {
    return detect_peaks(mag, impulse_template(mag.width, mag.height), k, opt);
}

std::optional<double> EstimatedTransform::get(const std::string& name) const {
    for (const auto& [n, v] : coefficients)
        if (n == name) return v;
    return std::nullopt;
}

EstimatedTransform estimate_affine(const std::vector<UV>& before, const std::vector<UV>& after,
                                   const EstimateOptions& opt) {
    if (before.size() != after.size()) throw InvalidArgument("correspondence count mismatch");
    if (before.size() < 3) throw InvalidArgument("need at least three correspondences");
    const auto n = static_cast<Eigen::Index>(before.size());
    Eigen::MatrixX2d X(n, 2), Y(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = before[i].first;
        X(i, 1) = before[i].second;
        Y(i, 0) = after[i].first;
        Y(i, 1) = after[i].second;
    }
    Eigen::JacobiSVD<Eigen::MatrixX2d> svd(X);
    const auto sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(1) / sv(0) < 1e-9) throw Underdetermined("correspondences are collinear");

    EstimatedTransform est;
    const Eigen::Matrix2d Ht = X.colPivHouseholderQr().solve(Y);
    est.frequency_map = Ht.transpose();
    est.residual = std::sqrt((Y - X * Ht).squaredNorm() / static_cast<double>(n));
    if (std::abs(est.frequency_map.determinant()) < kDeterminantEpsilon)
        throw SingularTransform("fitted frequency map is singular", est.frequency_map.determinant());

    // H = B^-T in the mirrored Cartesian frame; undo both.
    const Eigen::Matrix2d f = Eigen::Vector2d(-1.0, 1.0).asDiagonal();
    const Eigen::Matrix2d bc = est.frequency_map.inverse().transpose();
    const Eigen::Matrix2d L = f * bc * f;
    est.linear = L;

    auto maxabs = [](const Eigen::Matrix2d& m) { return m.cwiseAbs().maxCoeff(); };
    const double r_identity = maxabs(L - Eigen::Matrix2d::Identity());
    const double r_scale = std::max(std::abs(L(0, 1)), std::abs(L(1, 0)));
    const double r_shear = std::max(std::abs(L(0, 0) - 1.0), std::abs(L(1, 1) - 1.0));
    const double theta = std::atan2(L(0, 1) - L(1, 0), L(0, 0) + L(1, 1));
    Eigen::Matrix2d R;
    R << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    const double r_rotation = maxabs(L - R);

    if (r_identity < opt.eps_class) {
        est.kind = "identity";
        est.class_residual = r_identity;
        return est;
    }
    struct Option {
        const char* kind;
        double residual;
    };
    const Option opts[] = {{"scale", r_scale}, {"shear", r_shear}, {"rotation", r_rotation}};
    const Option* best = nullptr;
    for (const auto& o : opts)
        if (o.residual < opt.eps_class && (!best || o.residual < best->residual)) best = &o;

    const std::string kind = best ? best->kind : "affine";
    est.kind = kind;
    est.class_residual = best ? best->residual : 0.0;
    if (kind == "scale") {
        est.coefficients = {{"chi_x", L(0, 0)}, {"chi_y", L(1, 1)}};
    } else if (kind == "shear") {
        est.coefficients = {{"psi_yx", L(0, 1)}, {"psi_xy", L(1, 0)}};
    } else if (kind == "rotation") {
        double deg = theta * 180.0 / std::numbers::pi;
        if (deg < 0.0) deg += 360.0;
        est.coefficients = {{"theta_deg", deg}};
    } else {
        est.coefficients = {{"chi_x", L(0, 0)}, {"psi_yx", L(0, 1)}, {"psi_xy", L(1, 0)}, {"chi_y", L(1, 1)}};
    }
    return est;
}

std::vector<PhaseMeasurement> measure_phase_set(const ComplexSpectrum& spectrum,
                                                const std::vector<std::pair<int, int>>& peaks, double eps_mag) {
    std::vector<PhaseMeasurement> out;
    out.reserve(peaks.size());
    for (const auto& [u, v] : peaks) {
        PhaseMeasurement m;
        m.u = u;
        m.v = v;
        const Complex z = value_at(spectrum, u, v);
        m.magnitude = std::abs(z);
        if (m.magnitude < eps_mag) {
            m.undefined = true;
            m.phase_deg = std::numeric_limits<double>::quiet_NaN();
        } else {
            m.phase_deg = phase_of(z, eps_mag);
        }
        out.push_back(m);
    }
    return out;
}

TranslationEstimate estimate_translation(const std::vector<PhaseMeasurement>& before,
                                         const std::vector<PhaseMeasurement>& after, int M, int N) {
    if (before.size() != after.size()) throw InvalidArgument("phase set size mismatch");
    struct Obs {
        double u, v, dphi;
    };
    std::vector<Obs> obs;
    for (std::size_t i = 0; i < before.size(); ++i) {
        if (before[i].u != after[i].u || before[i].v != after[i].v)
            throw InvalidArgument("phase sets list different peaks");
        if (before[i].undefined || after[i].undefined) continue;
        obs.push_back({static_cast<double>(before[i].u), static_cast<double>(before[i].v),
                       after[i].phase_deg - before[i].phase_deg});
    }
    bool independent = false;
    for (std::size_t i = 0; i < obs.size() && !independent; ++i)
        for (std::size_t j = i + 1; j < obs.size(); ++j)
            if (std::abs(obs[i].u * obs[j].v - obs[i].v * obs[j].u) > 1e-9) {
                independent = true;
                break;
            }
    if (!independent) throw Underdetermined("peaks are proportional; translation cannot be recovered");

    TranslationEstimate best;
    best.residual_deg = std::numeric_limits<double>::infinity();
    for (int tx = 0; tx < M; ++tx)
        for (int ty = 0; ty < N; ++ty) {
            double worst = 0.0;
            for (const auto& o : obs) {
                const double p = predict_translation_phase(tx, ty, M, N, o.u, o.v);
                worst = std::max(worst, std::abs(wrap_degrees(p - o.dphi)));
                if (worst >= best.residual_deg) break;
            }
            if (worst < best.residual_deg) best = {tx, ty, worst};
        }
    return best;
}

}  // namespace sftp
