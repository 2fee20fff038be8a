#pragma once

// Sweep orchestration: configuration, deterministic dataset generation,
// extraction of phases and visibilities against theory, purity retrodiction
// and report/figure output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gphase/csv.hpp"
#include "gphase/fringe_fit.hpp"
#include "gphase/interferometer.hpp"
#include "gphase/svg.hpp"

namespace gphase {

enum class Method { Decoherer, Entangled, CoherentLaser };

inline std::string method_name(Method m) {
    switch (m) {
        case Method::Decoherer: return "decoherer";
        case Method::Entangled: return "entangled";
        default: return "coherent-laser";
    }
}

inline Method method_from_name(const std::string& s) {
    if (s == "decoherer") return Method::Decoherer;
    if (s == "entangled") return Method::Entangled;
    if (s == "coherent-laser") return Method::CoherentLaser;
    throw config_error("unknown method: " + s);
}

inline std::vector<double> default_theta1_grid_deg() {
    std::vector<double> g;
    for (int i = 0; i <= 36; ++i) g.push_back(-45.0 + 2.5 * i);
    return g;
}

struct ExperimentConfig {
    Method method = Method::Decoherer;
    std::vector<double> purities = {1.0, 0.81, 0.57, 0.3, 0.0};
    std::vector<double> theta1_deg = default_theta1_grid_deg();
    double theta2_deg = 0.0;
    int repeats = 4;
    std::uint64_t master_seed = 1;
    std::optional<Eigenvector> dominant;  // defaults to R
    double dephase_d = 0.0;               // decoherer residual coherence
    double qwp_angle_deg = 45.0;

    double wavelength_nm = 670.0;
    double pzt_gain_nm_per_v = 17.5;
    double pzt_offset_nm = 0.0;
    double background_rate_cps = 0.0;
    std::optional<double> baseline_visibility;  // per-method default
    std::optional<double> mean_rate_cps;        // per-method default
    std::optional<double> accumulation_s;       // per-method default
    std::vector<double> voltages_v = {30, 35, 40, 45, 50, 55, 60, 65, 70};

    Eigenvector dominant_eigenvector() const { return dominant.value_or(Eigenvector::R); }

    // Apparatus defaults mirror the three data-taking modes: 1000
    // counts/point for both photon-counting methods (2 s vs 6 s
    // accumulation) and a 1000-fold brighter coherent beam.
    double v0() const {
        if (baseline_visibility) return *baseline_visibility;
        switch (method) {
            case Method::Decoherer: return 0.95;
            case Method::Entangled: return 0.98;
            default: return 0.93;
        }
    }

    InterferometerConfig interferometer() const {
        InterferometerConfig ifm;
        ifm.wavelength_nm = wavelength_nm;
        ifm.pzt_gain_nm_per_v = pzt_gain_nm_per_v;
        ifm.pzt_offset_nm = pzt_offset_nm;
        ifm.background_rate_cps = background_rate_cps;
        ifm.baseline_visibility = v0();
        ifm.voltages_v = voltages_v;
        switch (method) {
            case Method::Decoherer:
                ifm.mean_rate_cps = mean_rate_cps.value_or(500.0);
                ifm.accumulation_s = accumulation_s.value_or(2.0);
                break;
            case Method::Entangled:
                ifm.mean_rate_cps = mean_rate_cps.value_or(500.0 / 3.0);
                ifm.accumulation_s = accumulation_s.value_or(6.0);
                break;
            default:
                ifm.mean_rate_cps = mean_rate_cps.value_or(500.0 * 1000.0);
                ifm.accumulation_s = accumulation_s.value_or(2.0);
        }
        return ifm;
    }

    PreparedState prepare_state(double r) const {
        double theta = angle_for_purity(r, dominant_eigenvector());
        double qa = deg_to_rad(qwp_angle_deg);
        // The coherent-laser mode shares the decoherer preparation; only the
        // count scale differs.
        if (method == Method::Entangled) return prepare_entangled(theta, qa);
        return prepare_decoherer(theta, dephase_d, qa);
    }

    void validate() const {
        if (purities.empty()) throw config_error("no purities configured");
        for (double r : purities)
            if (!(r >= 0.0 && r <= 1.0)) throw config_error("purity outside [0, 1]");
        if (theta1_deg.empty()) throw config_error("empty theta1 grid");
        if (repeats < 1) throw config_error("repeats must be at least 1");
        if (!(dephase_d >= 0.0 && dephase_d <= 1.0))
            throw config_error("dephase_d outside [0, 1]");
        try {
            interferometer().validate();
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what());
        }
    }
};

// ---------- config file ----------

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("bad numeric value for " + key + ": '" + v + "'");
    }
}

// Either a comma list or a start:step:stop range.
inline std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    if (v.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(trim(item));
        if (parts.size() != 3) throw config_error(key + ": range must be start:step:stop");
        double start = parse_double(key, parts[0]);
        double step = parse_double(key, parts[1]);
        double stop = parse_double(key, parts[2]);
        if (!(step > 0.0) || stop < start) throw config_error(key + ": bad range");
        for (double x = start; x <= stop + 1e-9 * step; x += step) out.push_back(x);
        return out;
    }
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw config_error(key + ": empty list");
    return out;
}

}  // namespace detail

inline void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                               const std::string& value) {
    if (key == "method") cfg.method = method_from_name(value);
    else if (key == "purities") cfg.purities = detail::parse_list(key, value);
    else if (key == "theta1_deg") cfg.theta1_deg = detail::parse_list(key, value);
    else if (key == "theta2_deg") cfg.theta2_deg = detail::parse_double(key, value);
    else if (key == "repeats") cfg.repeats = static_cast<int>(detail::parse_double(key, value));
    else if (key == "master_seed") cfg.master_seed = csv_u64(value);
    else if (key == "dominant") {
        if (value == "R") cfg.dominant = Eigenvector::R;
        else if (value == "L") cfg.dominant = Eigenvector::L;
        else throw config_error("dominant must be R or L");
    } else if (key == "dephase_d") cfg.dephase_d = detail::parse_double(key, value);
    else if (key == "qwp_angle_deg") cfg.qwp_angle_deg = detail::parse_double(key, value);
    else if (key == "wavelength_nm") cfg.wavelength_nm = detail::parse_double(key, value);
    else if (key == "pzt_gain_nm_per_v") cfg.pzt_gain_nm_per_v = detail::parse_double(key, value);
    else if (key == "pzt_offset_nm") cfg.pzt_offset_nm = detail::parse_double(key, value);
    else if (key == "background_rate_cps") cfg.background_rate_cps = detail::parse_double(key, value);
    else if (key == "baseline_visibility") cfg.baseline_visibility = detail::parse_double(key, value);
    else if (key == "mean_rate_cps") cfg.mean_rate_cps = detail::parse_double(key, value);
    else if (key == "accumulation_s") cfg.accumulation_s = detail::parse_double(key, value);
    else if (key == "voltages_v") cfg.voltages_v = detail::parse_list(key, value);
    else throw config_error("unknown config key: " + key);
}

inline ExperimentConfig parse_config_text(const std::string& text,
                                          ExperimentConfig cfg = ExperimentConfig{}) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string s = detail::trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        apply_config_entry(cfg, detail::trim(s.substr(0, eq)), detail::trim(s.substr(eq + 1)));
    }
    return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path,
                                         ExperimentConfig cfg = ExperimentConfig{}) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), std::move(cfg));
}

inline std::string config_to_text(const ExperimentConfig& cfg) {
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += fmt_double(v[i], 12);
        }
        return s;
    };
    std::ostringstream out;
    out << "method = " << method_name(cfg.method) << "\n";
    out << "purities = " << list(cfg.purities) << "\n";
    out << "theta1_deg = " << list(cfg.theta1_deg) << "\n";
    out << "theta2_deg = " << fmt_double(cfg.theta2_deg, 12) << "\n";
    out << "repeats = " << cfg.repeats << "\n";
    out << "master_seed = " << cfg.master_seed << "\n";
    out << "dominant = " << (cfg.dominant_eigenvector() == Eigenvector::R ? "R" : "L") << "\n";
    out << "dephase_d = " << fmt_double(cfg.dephase_d, 12) << "\n";
    out << "qwp_angle_deg = " << fmt_double(cfg.qwp_angle_deg, 12) << "\n";
    out << "wavelength_nm = " << fmt_double(cfg.wavelength_nm, 12) << "\n";
    out << "pzt_gain_nm_per_v = " << fmt_double(cfg.pzt_gain_nm_per_v, 12) << "\n";
    out << "pzt_offset_nm = " << fmt_double(cfg.pzt_offset_nm, 12) << "\n";
    out << "background_rate_cps = " << fmt_double(cfg.background_rate_cps, 12) << "\n";
    out << "baseline_visibility = " << fmt_double(cfg.v0(), 12) << "\n";
    InterferometerConfig ifm = cfg.interferometer();
    out << "mean_rate_cps = " << fmt_double(ifm.mean_rate_cps, 12) << "\n";
    out << "accumulation_s = " << fmt_double(ifm.accumulation_s, 12) << "\n";
    out << "voltages_v = " << list(cfg.voltages_v) << "\n";
    return out.str();
}

// ---------- sweep generation ----------

struct ScanRecord {
    std::string filename;
    bool is_reference = false;
    double r = 0.0;
    double theta1_deg = 0.0;
    int repeat = 0;
    std::uint64_t seed = 0;
};

struct SweepData {
    std::vector<ScanRecord> records;
    std::vector<FringeScan> scans;  // parallel to records
};

inline std::uint64_t pair_seed(std::uint64_t master, std::size_t r_index, std::size_t theta_index,
                               int repeat) {
    return mix_seed(mix_seed(mix_seed(master, r_index), theta_index),
                    static_cast<std::uint64_t>(repeat));
}

inline std::string scan_filename(bool reference, std::size_t r_index, std::size_t theta_index,
                                 int repeat) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_r%zu_t%02zu_rep%d.csv", reference ? "ref" : "scan",
                  r_index, theta_index, repeat);
    return buf;
}

inline SweepData run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    InterferometerConfig ifm = cfg.interferometer();
    SweepData data;
    data.records.reserve(cfg.purities.size() * cfg.theta1_deg.size() * cfg.repeats * 2);
    for (std::size_t ri = 0; ri < cfg.purities.size(); ++ri) {
        PreparedState state = cfg.prepare_state(cfg.purities[ri]);
        for (std::size_t ti = 0; ti < cfg.theta1_deg.size(); ++ti) {
            double theta1 = deg_to_rad(cfg.theta1_deg[ti]);
            double theta2 = deg_to_rad(cfg.theta2_deg);
            for (int rep = 0; rep < cfg.repeats; ++rep) {
                std::uint64_t seed = pair_seed(cfg.master_seed, ri, ti, rep);
                SettingPair pair = simulate_setting_pair(ifm, state, theta1, theta2, seed);
                data.records.push_back({scan_filename(false, ri, ti, rep), false,
                                        cfg.purities[ri], cfg.theta1_deg[ti], rep, seed});
                data.scans.push_back(std::move(pair.scan));
                data.records.push_back({scan_filename(true, ri, ti, rep), true, cfg.purities[ri],
                                        cfg.theta1_deg[ti], rep, seed});
                data.scans.push_back(std::move(pair.reference));
            }
        }
    }
    return data;
}

// ---------- dataset I/O ----------

inline void write_dataset(const std::string& dir, const ExperimentConfig& cfg,
                          const SweepData& data) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create " + dir);
    write_text_file((fs::path(dir) / "config.txt").string(), config_to_text(cfg));

    std::ostringstream manifest;
    manifest << "filename,kind,method,r,theta1_deg,repeat,seed\n";
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        const ScanRecord& rec = data.records[i];
        const FringeScan& scan = data.scans[i];
        manifest << rec.filename << "," << (rec.is_reference ? "reference" : "signal") << ","
                 << method_name(cfg.method) << "," << fmt_double(rec.r, 12) << ","
                 << fmt_double(rec.theta1_deg, 12) << "," << rec.repeat << "," << rec.seed << "\n";
        std::ostringstream body;
        body << "voltage_V,expected_counts,counts\n";
        for (std::size_t j = 0; j < scan.voltages_v.size(); ++j)
            body << fmt_double(scan.voltages_v[j], 12) << ","
                 << fmt_double(scan.expected_counts[j], 12) << "," << scan.counts[j] << "\n";
        write_text_file((fs::path(dir) / rec.filename).string(), body.str());
    }
    write_text_file((fs::path(dir) / "manifest.csv").string(), manifest.str());
}

struct Dataset {
    ExperimentConfig cfg;
    SweepData data;
};

inline Dataset read_dataset(const std::string& dir) {
    namespace fs = std::filesystem;
    Dataset ds;
    ds.cfg = load_config_file((fs::path(dir) / "config.txt").string());
    CsvTable manifest = read_csv((fs::path(dir) / "manifest.csv").string());
    int c_file = manifest.column("filename"), c_kind = manifest.column("kind");
    int c_r = manifest.column("r"), c_theta = manifest.column("theta1_deg");
    int c_rep = manifest.column("repeat"), c_seed = manifest.column("seed");

    std::vector<std::string> missing;
    for (const auto& row : manifest.rows) {
        ScanRecord rec;
        rec.filename = row[c_file];
        rec.is_reference = row[c_kind] == "reference";
        rec.r = csv_double(row[c_r]);
        rec.theta1_deg = csv_double(row[c_theta]);
        rec.repeat = static_cast<int>(csv_u64(row[c_rep]));
        rec.seed = csv_u64(row[c_seed]);
        fs::path p = fs::path(dir) / rec.filename;
        if (!fs::exists(p)) {
            missing.push_back(rec.filename);
            continue;
        }
        CsvTable t = read_csv(p.string());
        int cv = t.column("voltage_V"), ce = t.column("expected_counts"), cc = t.column("counts");
        FringeScan scan;
        scan.theta1 = deg_to_rad(rec.is_reference ? 0.0 : rec.theta1_deg);
        scan.seed = rec.seed;
        for (const auto& r : t.rows) {
            scan.voltages_v.push_back(csv_double(r[cv]));
            scan.expected_counts.push_back(csv_double(r[ce]));
            scan.counts.push_back(csv_u64(r[cc]));
        }
        ds.data.records.push_back(std::move(rec));
        ds.data.scans.push_back(std::move(scan));
    }
    if (!missing.empty()) {
        std::string msg = "dataset is missing scan files:";
        for (const auto& f : missing) msg += " " + f;
        throw analysis_error(msg);
    }
    return ds;
}

// ---------- analysis ----------

struct PointSummary {
    double theta1_deg = 0.0;
    bool defined = false;  // phase usable: visibility clears 3 sigma, sane error
    int n_repeats = 0;
    double gamma = 0.0, gamma_sigma = 0.0, gamma_theory = 0.0;
    bool theory_defined = true;
    double vis = 0.0, vis_sigma = 0.0, vis_theory = 0.0;
    double gamma_spread = 0.0, vis_spread = 0.0;  // sample spread across repeats
};

struct CurveSummary {
    double r_config = 0.0;
    std::vector<PointSummary> points;
    double chi2_phase = 0.0, chi2_vis = 0.0;
    int n_phase = 0;
    PurityEstimate retro;
    double spread_ratio_phase = 0.0, spread_ratio_vis = 0.0;
};

struct SweepReport {
    Method method = Method::Decoherer;
    double v0 = 0.0;
    double k_hat = 0.0;
    Eigenvector dominant = Eigenvector::R;
    std::vector<CurveSummary> curves;
    double avg_chi2_phase = 0.0, avg_chi2_vis = 0.0;
};

inline PhaseVisibility theory_phase(const ExperimentConfig& cfg, double r, double theta1_deg) {
    SolidAngle omega =
        solid_angle_from_waveplates(deg_to_rad(theta1_deg), deg_to_rad(cfg.theta2_deg));
    // The L-dominant preparation negates the phase; same visibility.
    if (cfg.dominant_eigenvector() == Eigenvector::L) omega.omega = -omega.omega;
    return mixed_phase_analytic(Purity{r}, omega);
}

inline SweepReport analyze_sweep(const ExperimentConfig& cfg, const SweepData& data) {
    cfg.validate();
    if (data.records.size() != data.scans.size())
        throw std::invalid_argument("records and scans out of step");

    // Shared PZT calibration from the reference scans.
    std::vector<ScanData> refs;
    for (std::size_t i = 0; i < data.records.size() && refs.size() < 64; ++i)
        if (data.records[i].is_reference)
            refs.push_back({data.scans[i].voltages_v, data.scans[i].counts_real()});
    if (refs.empty()) throw analysis_error("dataset contains no reference scans");
    double k_nom = 2.0 * pi * cfg.pzt_gain_nm_per_v / cfg.wavelength_nm;
    double dv = detail::min_spacing(refs.front().voltages);
    double k_hat = estimate_frequency(refs, 0.25 * k_nom, std::min(1.75 * k_nom, 0.98 * pi / dv));

    // Index scans by (r, theta, repeat); both halves of a pair must exist.
    struct Pair {
        const FringeScan* signal = nullptr;
        const FringeScan* reference = nullptr;
    };
    std::map<std::tuple<std::string, std::string, int>, Pair> pairs;
    for (std::size_t i = 0; i < data.records.size(); ++i) {
        const ScanRecord& rec = data.records[i];
        auto key = std::make_tuple(fmt_double(rec.r, 12), fmt_double(rec.theta1_deg, 12), rec.repeat);
        (rec.is_reference ? pairs[key].reference : pairs[key].signal) = &data.scans[i];
    }
    std::string gaps;
    for (const auto& [key, pair] : pairs)
        if (!pair.signal || !pair.reference)
            gaps += " (r=" + std::get<0>(key) + ", theta1=" + std::get<1>(key) +
                    ", repeat=" + std::to_string(std::get<2>(key)) + ")";
    if (!gaps.empty()) throw analysis_error("dataset has unpaired scans:" + gaps);

    SweepReport report;
    report.method = cfg.method;
    report.v0 = cfg.v0();
    report.k_hat = k_hat;
    report.dominant = cfg.dominant_eigenvector();

    double chi2_phase_sum = 0.0, chi2_vis_sum = 0.0;
    int chi2_phase_n = 0, chi2_vis_n = 0;
    for (double r_cfg : cfg.purities) {
        CurveSummary curve;
        curve.r_config = r_cfg;
        std::vector<PhasePoint> retro_points;
        double spread_num_p = 0.0, spread_den_p = 0.0;
        double spread_num_v = 0.0, spread_den_v = 0.0;
        for (double theta1 : cfg.theta1_deg) {
            auto key_of = [&](int rep) {
                return std::make_tuple(fmt_double(r_cfg, 12), fmt_double(theta1, 12), rep);
            };
            PointSummary pt;
            pt.theta1_deg = theta1;
            std::vector<double> gammas, gamma_sigmas, viss, vis_sigmas;
            for (int rep = 0; pairs.count(key_of(rep)); ++rep) {
                const Pair& pair = pairs[key_of(rep)];
                FitResult fit = fit_fringe(pair.signal->voltages_v, pair.signal->counts_real(), k_hat);
                FitResult ref = fit_fringe(pair.reference->voltages_v, pair.reference->counts_real(), k_hat);
                PhaseDifference pd = phase_difference(fit, ref);
                gammas.push_back(pd.gamma);
                gamma_sigmas.push_back(pd.sigma);
                viss.push_back(fit.v_fit);
                vis_sigmas.push_back(fit.sigma_v);
            }
            pt.n_repeats = static_cast<int>(gammas.size());
            if (pt.n_repeats == 0) throw analysis_error("no repeats found for a grid point");

            // Inverse-variance averages; the phase mean is circular so that
            // +/- pi repeats do not cancel.
            cplx z = 0.0;
            double wp_sum = 0.0, wv_sum = 0.0, v_acc = 0.0;
            for (int i = 0; i < pt.n_repeats; ++i) {
                double wp = 1.0 / (gamma_sigmas[i] * gamma_sigmas[i]);
                double wv = 1.0 / (vis_sigmas[i] * vis_sigmas[i]);
                z += wp * std::polar(1.0, gammas[i]);
                wp_sum += wp;
                v_acc += wv * viss[i];
                wv_sum += wv;
            }
            pt.gamma = wrap_pi(std::arg(z));
            pt.gamma_sigma = 1.0 / std::sqrt(wp_sum);
            pt.vis = v_acc / wv_sum;
            pt.vis_sigma = 1.0 / std::sqrt(wv_sum);

            if (pt.n_repeats > 1) {
                double sp = 0.0, sv = 0.0, mp = 0.0, mv = 0.0;
                for (int i = 0; i < pt.n_repeats; ++i) {
                    double dg = wrap_pi(gammas[i] - pt.gamma);
                    sp += dg * dg;
                    sv += (viss[i] - pt.vis) * (viss[i] - pt.vis);
                    mp += gamma_sigmas[i] * gamma_sigmas[i];
                    mv += vis_sigmas[i] * vis_sigmas[i];
                }
                pt.gamma_spread = std::sqrt(sp / (pt.n_repeats - 1));
                pt.vis_spread = std::sqrt(sv / (pt.n_repeats - 1));
                spread_num_p += sp / (pt.n_repeats - 1);
                spread_den_p += mp / pt.n_repeats;
                spread_num_v += sv / (pt.n_repeats - 1);
                spread_den_v += mv / pt.n_repeats;
            }

            PhaseVisibility th = theory_phase(cfg, r_cfg, theta1);
            pt.theory_defined = th.defined;
            pt.gamma_theory = th.defined ? th.gamma : 0.0;
            pt.vis_theory = report.v0 * th.v;
            pt.defined = pt.vis >= 3.0 * pt.vis_sigma && pt.gamma_sigma <= 0.5;

            if (pt.defined && pt.theory_defined) {
                double dz = wrap_pi(pt.gamma - pt.gamma_theory) / pt.gamma_sigma;
                curve.chi2_phase += dz * dz;
                ++curve.n_phase;
                double g = pt.gamma;
                if (cfg.dominant_eigenvector() == Eigenvector::L) g = wrap_pi(-g);
                retro_points.push_back({deg_to_rad(theta1), g, pt.gamma_sigma});
            }
            double dv_ = (pt.vis - pt.vis_theory) / pt.vis_sigma;
            curve.chi2_vis += dv_ * dv_;
            curve.points.push_back(pt);
        }
        curve.chi2_phase = curve.n_phase > 0 ? curve.chi2_phase / curve.n_phase : 0.0;
        curve.chi2_vis /= static_cast<double>(curve.points.size());
        curve.spread_ratio_phase = spread_den_p > 0.0 ? std::sqrt(spread_num_p / spread_den_p) : 0.0;
        curve.spread_ratio_vis = spread_den_v > 0.0 ? std::sqrt(spread_num_v / spread_den_v) : 0.0;
        if (retro_points.size() >= 3) curve.retro = retrodict_purity(retro_points);
        if (curve.n_phase > 0) {
            chi2_phase_sum += curve.chi2_phase;
            ++chi2_phase_n;
        }
        chi2_vis_sum += curve.chi2_vis;
        ++chi2_vis_n;
        report.curves.push_back(std::move(curve));
    }
    report.avg_chi2_phase = chi2_phase_n > 0 ? chi2_phase_sum / chi2_phase_n : 0.0;
    report.avg_chi2_vis = chi2_vis_n > 0 ? chi2_vis_sum / chi2_vis_n : 0.0;
    return report;
}

// ---------- report output ----------

inline std::string report_to_text(const SweepReport& report) {
    std::ostringstream out;
    out << "method: " << method_name(report.method) << "\n";
    out << "baseline visibility v0: " << fmt_double(report.v0, 6) << "\n";
    out << "fitted fringe frequency: " << fmt_double(report.k_hat, 9) << " rad/V\n";
    out << "dominant eigenvector: " << (report.dominant == Eigenvector::R ? "R" : "L") << "\n\n";
    for (const auto& c : report.curves) {
        out << "curve r = " << fmt_double(c.r_config, 6) << "\n";
        out << "  retrodicted r: " << fmt_double(c.retro.r, 6) << " +/- "
            << fmt_double(c.retro.sigma_r, 6) << "\n";
        out << "  reduced chi2 (phases, " << c.n_phase << " defined points): "
            << fmt_double(c.chi2_phase, 6) << "\n";
        out << "  reduced chi2 (visibilities, " << c.points.size()
            << " points): " << fmt_double(c.chi2_vis, 6) << "\n";
        out << "  repeat spread / fitted sigma (phase): " << fmt_double(c.spread_ratio_phase, 6)
            << "\n";
        out << "  repeat spread / fitted sigma (visibility): " << fmt_double(c.spread_ratio_vis, 6)
            << "\n";
    }
    out << "\naverage reduced chi2 (phases): " << fmt_double(report.avg_chi2_phase, 6) << "\n";
    out << "average reduced chi2 (visibilities): " << fmt_double(report.avg_chi2_vis, 6) << "\n";
    return out.str();
}

inline std::string curve_csv(const CurveSummary& c) {
    std::ostringstream out;
    out << "theta1_deg,defined,gamma_rad,gamma_sigma,gamma_theory_rad,visibility,"
           "visibility_sigma,visibility_theory,n_repeats,gamma_spread,visibility_spread\n";
    for (const auto& p : c.points) {
        out << fmt_double(p.theta1_deg, 12) << "," << (p.defined ? 1 : 0) << ","
            << fmt_double(p.gamma, 9) << "," << fmt_double(p.gamma_sigma, 9) << ","
            << (p.theory_defined ? fmt_double(p.gamma_theory, 9) : "nan") << ","
            << fmt_double(p.vis, 9) << "," << fmt_double(p.vis_sigma, 9) << ","
            << fmt_double(p.vis_theory, 9) << "," << p.n_repeats << ","
            << fmt_double(p.gamma_spread, 9) << "," << fmt_double(p.vis_spread, 9) << "\n";
    }
    return out.str();
}

inline std::string summary_csv(const SweepReport& report) {
    std::ostringstream out;
    out << "r_config,retro_r,retro_sigma_r,chi2_phase,chi2_vis,n_phase_points,"
           "spread_ratio_phase,spread_ratio_vis\n";
    for (const auto& c : report.curves)
        out << fmt_double(c.r_config, 12) << "," << fmt_double(c.retro.r, 9) << ","
            << fmt_double(c.retro.sigma_r, 9) << "," << fmt_double(c.chi2_phase, 9) << ","
            << fmt_double(c.chi2_vis, 9) << "," << c.n_phase << ","
            << fmt_double(c.spread_ratio_phase, 9) << "," << fmt_double(c.spread_ratio_vis, 9)
            << "\n";
    return out.str();
}

// ---------- plotting ----------

namespace detail {

inline const char* curve_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b",
                                    "#e377c2"};
    return palette[i % 6];
}

// Theory curves use the retrodicted purity with its sigma band when
// available, else the configured r.
inline void fill_panel(PlotPanel& phase_panel, PlotPanel& vis_panel, const ExperimentConfig& cfg,
                       const SweepReport& report) {
    double lo = cfg.theta1_deg.front(), hi = cfg.theta1_deg.back();
    for (auto* p : {&phase_panel, &vis_panel}) {
        p->x_min = lo - 2;
        p->x_max = hi + 2;
        p->x_label = "theta1 (deg)";
        p->x_ticks = {lo, 0.5 * (lo + hi), hi};
    }
    phase_panel.y_min = -pi - 0.2;
    phase_panel.y_max = pi + 0.2;
    phase_panel.y_ticks = {-pi, -0.5 * pi, 0, 0.5 * pi, pi};
    phase_panel.y_label = "geometric phase (rad)";
    vis_panel.y_min = 0.0;
    vis_panel.y_max = 1.05;
    vis_panel.y_ticks = {0, 0.25, 0.5, 0.75, 1.0};
    vis_panel.y_label = "visibility";

    for (std::size_t ci = 0; ci < report.curves.size(); ++ci) {
        const CurveSummary& c = report.curves[ci];
        const char* color = curve_color(ci);
        double r_th = c.retro.sigma_r > 0.0 && std::isfinite(c.retro.sigma_r) ? c.retro.r
                                                                              : c.r_config;
        double r_lo = std::max(0.0, r_th - c.retro.sigma_r);
        double r_hi = std::min(1.0, r_th + c.retro.sigma_r);
        PlotSeries phase_line{{}, {}, color, false, {}, 1.0, "r=" + fmt_double(c.r_config, 3)};
        PlotSeries vis_line{{}, {}, color, false, {}, 0.0, "r=" + fmt_double(c.r_config, 3)};
        PlotBand phase_band{{}, {}, {}, color, 1.0};
        PlotBand vis_band{{}, {}, {}, color, 0.0};
        for (double t = lo; t <= hi + 1e-9; t += (hi - lo) / 240.0) {
            PhaseVisibility th = theory_phase(cfg, r_th, t);
            PhaseVisibility th_lo = theory_phase(cfg, r_lo, t);
            PhaseVisibility th_hi = theory_phase(cfg, r_hi, t);
            if (th.defined) {
                phase_line.x.push_back(t);
                phase_line.y.push_back(th.gamma);
                if (th_lo.defined && th_hi.defined) {
                    phase_band.x.push_back(t);
                    phase_band.y_lo.push_back(std::min(th_lo.gamma, th_hi.gamma));
                    phase_band.y_hi.push_back(std::max(th_lo.gamma, th_hi.gamma));
                }
            }
            vis_line.x.push_back(t);
            vis_line.y.push_back(report.v0 * th.v);
            vis_band.x.push_back(t);
            vis_band.y_lo.push_back(report.v0 * std::min(th_lo.v, th_hi.v));
            vis_band.y_hi.push_back(report.v0 * std::max(th_lo.v, th_hi.v));
        }
        PlotSeries phase_pts{{}, {}, color, true, {}, 0.0, ""};
        PlotSeries vis_pts{{}, {}, color, true, {}, 0.0, ""};
        for (const auto& p : c.points) {
            if (p.defined) {
                phase_pts.x.push_back(p.theta1_deg);
                phase_pts.y.push_back(p.gamma);
                phase_pts.yerr.push_back(p.gamma_sigma);
            }
            vis_pts.x.push_back(p.theta1_deg);
            vis_pts.y.push_back(p.vis);
            vis_pts.yerr.push_back(p.vis_sigma);
        }
        phase_panel.bands.push_back(std::move(phase_band));
        vis_panel.bands.push_back(std::move(vis_band));
        phase_panel.series.push_back(std::move(phase_line));
        phase_panel.series.push_back(std::move(phase_pts));
        vis_panel.series.push_back(std::move(vis_line));
        vis_panel.series.push_back(std::move(vis_pts));
    }
}

}  // namespace detail

inline std::string render_sweep_svg(const ExperimentConfig& cfg, const SweepReport& report) {
    PlotPanel phases, visibilities;
    phases.title = "geometric phase, " + method_name(report.method);
    visibilities.title = "visibility, " + method_name(report.method);
    detail::fill_panel(phases, visibilities, cfg, report);
    return render_svg({phases, visibilities}, 2);
}

inline void write_analysis(const std::string& dir, const ExperimentConfig& cfg,
                           const SweepReport& report) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create " + dir);
    for (std::size_t i = 0; i < report.curves.size(); ++i)
        write_text_file((fs::path(dir) / ("curve_r" + std::to_string(i) + ".csv")).string(),
                        curve_csv(report.curves[i]));
    write_text_file((fs::path(dir) / "summary.csv").string(), summary_csv(report));
    write_text_file((fs::path(dir) / "report.txt").string(), report_to_text(report));
    write_text_file((fs::path(dir) / "curves.svg").string(), render_sweep_svg(cfg, report));
}

// ---------- theory table ----------

inline std::string theory_csv(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "theta1_deg,omega_rad,r,gamma_rad,visibility\n";
    for (double r : cfg.purities) {
        for (double t : cfg.theta1_deg) {
            SolidAngle omega =
                solid_angle_from_waveplates(deg_to_rad(t), deg_to_rad(cfg.theta2_deg));
            PhaseVisibility pv = theory_phase(cfg, r, t);
            out << fmt_double(t, 12) << "," << fmt_double(omega.omega, 12) << ","
                << fmt_double(r, 12) << "," << (pv.defined ? fmt_double(pv.gamma, 12) : "nan")
                << "," << fmt_double(pv.v, 12) << "\n";
        }
    }
    return out.str();
}

// ---------- figure reproduction ----------

// Simulates all three preparation methods with their apparatus defaults and
// renders phases and visibilities per method (six panels). The entangled
// panels default to the mirrored, L-dominant preparation.
inline void reproduce_figure(const ExperimentConfig& base, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create " + dir);
    std::vector<PlotPanel> panels(6);
    const char* tags[] = {"(a)", "(b)", "(c)", "(d)", "(e)", "(f)"};
    Method methods[] = {Method::Decoherer, Method::Entangled, Method::CoherentLaser};
    for (int mi = 0; mi < 3; ++mi) {
        ExperimentConfig cfg = base;
        cfg.method = methods[mi];
        cfg.baseline_visibility.reset();
        cfg.mean_rate_cps.reset();
        cfg.accumulation_s.reset();
        if (!base.dominant && cfg.method == Method::Entangled) cfg.dominant = Eigenvector::L;
        cfg.master_seed = mix_seed(base.master_seed, static_cast<std::uint64_t>(mi));
        SweepReport report = analyze_sweep(cfg, run_sweep(cfg));
        PlotPanel& ph = panels[2 * mi];
        PlotPanel& vi = panels[2 * mi + 1];
        ph.title = std::string(tags[2 * mi]) + " geometric phase, " + method_name(cfg.method);
        vi.title = std::string(tags[2 * mi + 1]) + " visibility, " + method_name(cfg.method);
        detail::fill_panel(ph, vi, cfg, report);
        write_text_file((fs::path(dir) / ("summary_" + method_name(cfg.method) + ".csv")).string(),
                        summary_csv(report));
        write_text_file((fs::path(dir) / ("report_" + method_name(cfg.method) + ".txt")).string(),
                        report_to_text(report));
    }
    write_text_file((fs::path(dir) / "fig3.svg").string(), render_svg(panels, 2));
}

}  // namespace gphase
