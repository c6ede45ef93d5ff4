#include "homsim/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "homsim/amplitude.hpp"
#include "homsim/classical.hpp"
#include "homsim/errors.hpp"
#include "homsim/gkp.hpp"
#include "homsim/grid.hpp"
#include "homsim/hom.hpp"
#include "homsim/parallel.hpp"
#include "homsim/pump.hpp"
#include "homsim/version.hpp"
#include "homsim/warnings.hpp"
#include "homsim/wigner.hpp"

namespace homsim::cli {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// formatting

std::string fmt17(double v) {
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 16);
    return std::string(buf.data(), res.ptr);
}

// ---------------------------------------------------------------------------
// schema walking

struct Context {
    Diagnostics* diag = nullptr;

    void error(const std::string& msg) const { diag->errors.push_back(msg); }
    void warn(const std::string& msg) const { diag->warnings.push_back(msg); }
};

void check_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed,
                   const Context& ctx) {
    if (!obj.is_object()) return;
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) ctx.warn("unknown field: " + path + "." + key);
    }
}

double need_number(const json& obj, const std::string& path, const char* key, const Context& ctx,
                   bool* ok = nullptr) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        ctx.error(path + "." + key + ": required number is missing or not numeric");
        if (ok) *ok = false;
        return 0.0;
    }
    if (ok) *ok = true;
    return obj[key].get<double>();
}

double opt_number(const json& obj, const char* key, double fallback) {
    if (obj.contains(key) && obj[key].is_number()) return obj[key].get<double>();
    return fallback;
}

// ---------------------------------------------------------------------------
// grids

FrequencyGrid parse_fgrid(const json& j, const std::string& path, const Context& ctx) {
    if (!j.is_object()) {
        ctx.error(path + ": expected an object {n, center, span}");
        return FrequencyGrid(8, 0.0, 1.0);
    }
    check_unknown(j, path, {"n", "center", "span"}, ctx);
    const double n = need_number(j, path, "n", ctx);
    const double span = need_number(j, path, "span", ctx);
    const double center = opt_number(j, "center", 0.0);
    if (n < 8.0 || n != std::floor(n)) {
        ctx.error(path + ".n: need an integer >= 8");
        return FrequencyGrid(8, 0.0, 1.0);
    }
    if (!(span > 0.0)) {
        ctx.error(path + ".span: must be positive");
        return FrequencyGrid(8, 0.0, 1.0);
    }
    return FrequencyGrid(static_cast<std::size_t>(n), center, span);
}

TimeGrid parse_tgrid(const json& j, const std::string& path, const Context& ctx) {
    const FrequencyGrid f = parse_fgrid(j, path, ctx);
    return TimeGrid(f.n, f.center, f.span);
}

// ---------------------------------------------------------------------------
// device / cavity

DeviceConfig parse_device(const json& j, const std::string& path, const Context& ctx) {
    check_unknown(j, path, {"length", "group_velocity", "pump_frequency", "degeneracy_angle", "light_speed"},
                  ctx);
    const double L = need_number(j, path, "length", ctx);
    const double vg = need_number(j, path, "group_velocity", ctx);
    const double wp = need_number(j, path, "pump_frequency", ctx);
    const double theta = need_number(j, path, "degeneracy_angle", ctx);
    const double c = opt_number(j, "light_speed", 299792458.0);
    if (!ctx.diag->errors.empty()) return DeviceConfig(1.0, 1.0, 1.0, 0.0, 1.0);
    return DeviceConfig(L, vg, wp, theta, c);
}

CavityConfig parse_cavity(const json& j, const std::string& path, const Context& ctx) {
    check_unknown(j, path, {"reflectivity", "roundtrip_time", "detuning"}, ctx);
    const double R = need_number(j, path, "reflectivity", ctx);
    const double tb = need_number(j, path, "roundtrip_time", ctx);
    CavityConfig::Detuning det = CavityConfig::Detuning::Resonant;
    if (j.contains("detuning")) {
        const std::string d = j["detuning"].is_string() ? j["detuning"].get<std::string>() : "";
        if (d == "resonant") {
            det = CavityConfig::Detuning::Resonant;
        } else if (d == "anti-resonant") {
            det = CavityConfig::Detuning::AntiResonant;
        } else {
            ctx.error(path + ".detuning: expected \"resonant\" or \"anti-resonant\"");
        }
    }
    if (R < 0.0 || R >= 1.0) ctx.error(path + ".reflectivity: need 0 <= R < 1");
    if (!(tb > 0.0)) ctx.error(path + ".roundtrip_time: must be positive");
    if (!ctx.diag->errors.empty()) return CavityConfig(0.0, 1.0, det);
    return CavityConfig(R, tb, det);
}

std::vector<PumpBeam> parse_beams(const json& j, const std::string& path, const Context& ctx) {
    std::vector<PumpBeam> beams;
    if (!j.is_array() || j.empty()) {
        ctx.error(path + ": expected a non-empty array of beams");
        return beams;
    }
    for (std::size_t b = 0; b < j.size(); ++b) {
        const json& bj = j[b];
        const std::string bpath = path + "[" + std::to_string(b) + "]";
        check_unknown(bj, bpath, {"waist", "angle", "position", "amplitude"}, ctx);
        PumpBeam beam;
        beam.waist = need_number(bj, bpath, "waist", ctx);
        beam.angle = opt_number(bj, "angle", 0.0);
        beam.position = opt_number(bj, "position", 0.0);
        if (bj.contains("amplitude")) {
            const json& a = bj["amplitude"];
            if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
                beam.amplitude = {a[0].get<double>(), a[1].get<double>()};
            } else {
                ctx.error(bpath + ".amplitude: expected [re, im]");
            }
        }
        if (!(beam.waist > 0.0)) ctx.error(bpath + ".waist: must be positive");
        beams.push_back(beam);
    }
    return beams;
}

// ---------------------------------------------------------------------------
// single-photon state specs

// Validation-only walk of a state spec (no construction).
void validate_state_spec(const json& j, const std::string& path, const Context& ctx) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        ctx.error(path + ": expected an object with a \"type\" string");
        return;
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "gaussian" || type == "hermite1") {
        check_unknown(j, path, {"type", "sigma", "center", "delay"}, ctx);
        const double sigma = need_number(j, path, "sigma", ctx);
        if (sigma <= 0.0) ctx.error(path + ".sigma: must be positive");
    } else if (type == "superposition") {
        check_unknown(j, path, {"type", "components"}, ctx);
        if (!j.contains("components") || !j["components"].is_array() || j["components"].empty()) {
            ctx.error(path + ".components: expected a non-empty array");
            return;
        }
        for (std::size_t k = 0; k < j["components"].size(); ++k) {
            const json& c = j["components"][k];
            const std::string cpath = path + ".components[" + std::to_string(k) + "]";
            check_unknown(c, cpath, {"weight", "state"}, ctx);
            if (!c.contains("weight") || !c["weight"].is_array() || c["weight"].size() != 2) {
                ctx.error(cpath + ".weight: expected [re, im]");
            }
            if (!c.contains("state")) {
                ctx.error(cpath + ".state: missing");
            } else {
                validate_state_spec(c["state"], cpath + ".state", ctx);
            }
        }
    } else if (type == "comb") {
        check_unknown(j, path, {"type", "label", "spacing", "tooth_width", "envelope_width"}, ctx);
        need_number(j, path, "spacing", ctx);
        need_number(j, path, "tooth_width", ctx);
        need_number(j, path, "envelope_width", ctx);
        const std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
        if (label != "zero" && label != "one" && label != "plus" && label != "minus" && label != "raw") {
            ctx.error(path + ".label: expected zero|one|plus|minus|raw");
        }
    } else if (type == "pump") {
        check_unknown(j, path, {"type", "device", "beams", "z_samples", "cavity"}, ctx);
        if (!j.contains("device")) {
            ctx.error(path + ".device: missing");
        } else {
            parse_device(j["device"], path + ".device", ctx);
        }
        if (!j.contains("beams")) {
            ctx.error(path + ".beams: missing");
        } else {
            parse_beams(j["beams"], path + ".beams", ctx);
        }
        if (j.contains("cavity")) parse_cavity(j["cavity"], path + ".cavity", ctx);
    } else if (type == "cavity-gaussian") {
        check_unknown(j, path, {"type", "sigma", "center", "delay", "cavity"}, ctx);
        const double sigma = need_number(j, path, "sigma", ctx);
        if (sigma <= 0.0) ctx.error(path + ".sigma: must be positive");
        if (!j.contains("cavity")) {
            ctx.error(path + ".cavity: missing");
        } else {
            parse_cavity(j["cavity"], path + ".cavity", ctx);
        }
    } else {
        ctx.error(path + ".type: unknown state type \"" + type + "\"");
    }
}

SpectralAmplitude build_state(const json& j, const FrequencyGrid& grid);

SpectralAmplitude build_gaussian(const json& j, const FrequencyGrid& grid, bool odd) {
    const double sigma = j["sigma"].get<double>();
    const double center = opt_number(j, "center", 0.0);
    const double delay = opt_number(j, "delay", 0.0);
    if (std::abs(center - grid.center) + 5.0 * sigma > grid.span / 2.0) {
        warnings::emit("state: grid covers fewer than 10 standard deviations of a gaussian component");
    }
    cvector vals(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double w = grid.sample(k);
        const double d = w - center;
        const double env = std::exp(-d * d / (2.0 * sigma * sigma));
        vals[k] = (odd ? d * env : env) * std::polar(1.0, w * delay);
    }
    return normalize(SpectralAmplitude(grid, std::move(vals)));
}

SpectralAmplitude build_state(const json& j, const FrequencyGrid& grid) {
    const std::string type = j["type"].get<std::string>();
    if (type == "gaussian") return build_gaussian(j, grid, false);
    if (type == "hermite1") return build_gaussian(j, grid, true);
    if (type == "superposition") {
        cvector acc(grid.n, cdouble(0.0, 0.0));
        for (const json& c : j["components"]) {
            const cdouble weight(c["weight"][0].get<double>(), c["weight"][1].get<double>());
            const SpectralAmplitude part = build_state(c["state"], grid);
            for (std::size_t k = 0; k < grid.n; ++k) acc[k] += weight * part.values[k];
        }
        return normalize(SpectralAmplitude(grid, std::move(acc)));
    }
    if (type == "comb") {
        const std::string label = j["label"].get<std::string>();
        LogicalLabel l = LogicalLabel::Raw;
        if (label == "zero") l = LogicalLabel::Zero;
        if (label == "one") l = LogicalLabel::One;
        if (label == "plus") l = LogicalLabel::Plus;
        if (label == "minus") l = LogicalLabel::Minus;
        return encode(l, j["spacing"].get<double>(), j["tooth_width"].get<double>(),
                      j["envelope_width"].get<double>(), grid)
            .amplitude;
    }
    if (type == "pump") {
        Diagnostics scratch;
        Context ctx{&scratch};
        const DeviceConfig device = parse_device(j["device"], "device", ctx);
        const std::vector<PumpBeam> beams = parse_beams(j["beams"], "beams", ctx);
        if (!scratch.errors.empty()) throw config_error(scratch.errors.front());
        const auto n_z = static_cast<std::size_t>(opt_number(j, "z_samples", 1024.0));
        SpectralAmplitude f = fminus_from_beams(beams, device, grid, n_z);
        if (j.contains("cavity")) {
            const CavityConfig cavity = parse_cavity(j["cavity"], "cavity", ctx);
            if (!scratch.errors.empty()) throw config_error(scratch.errors.front());
            f = cavity_comb(f, cavity);
        }
        return f;
    }
    if (type == "cavity-gaussian") {
        Diagnostics scratch;
        Context ctx{&scratch};
        const CavityConfig cavity = parse_cavity(j["cavity"], "cavity", ctx);
        if (!scratch.errors.empty()) throw config_error(scratch.errors.front());
        return cavity_comb(build_gaussian(j, grid, false), cavity);
    }
    throw config_error("state.type: unknown state type \"" + type + "\"");
}

// ---------------------------------------------------------------------------
// two-photon state specs

void validate_pair_spec(const json& j, const std::string& path, const Context& ctx) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        ctx.error(path + ": expected an object with a \"type\" string");
        return;
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "separable") {
        check_unknown(j, path, {"type", "photon1", "photon2", "phase"}, ctx);
        if (!j.contains("photon1") || !j.contains("photon2")) {
            ctx.error(path + ": separable states need photon1 and photon2");
            return;
        }
        validate_state_spec(j["photon1"], path + ".photon1", ctx);
        validate_state_spec(j["photon2"], path + ".photon2", ctx);
    } else if (type == "pm") {
        check_unknown(j, path, {"type", "f_plus", "f_minus", "convention"}, ctx);
        if (!j.contains("f_plus") || !j.contains("f_minus")) {
            ctx.error(path + ": pm states need f_plus and f_minus");
            return;
        }
        validate_state_spec(j["f_plus"], path + ".f_plus", ctx);
        validate_state_spec(j["f_minus"], path + ".f_minus", ctx);
        if (j.contains("convention")) {
            const std::string c = j["convention"].is_string() ? j["convention"].get<std::string>() : "";
            if (c != "half-difference" && c != "sum-difference" && c != "orthonormal") {
                ctx.error(path + ".convention: expected half-difference|sum-difference|orthonormal");
            }
        }
    } else {
        ctx.error(path + ".type: unknown pair type \"" + type + "\"");
    }
}

PMConvention parse_convention(const json& j) {
    const std::string c = j.contains("convention") ? j["convention"].get<std::string>() : "half-difference";
    if (c == "sum-difference") return PMConvention::SumDifference;
    if (c == "orthonormal") return PMConvention::Orthonormal;
    return PMConvention::HalfDifference;
}

JointSpectralAmplitude build_pair(const json& j, const FrequencyGrid& grid, double phase_override = 0.0,
                                  bool use_override = false) {
    const std::string type = j["type"].get<std::string>();
    if (type == "separable") {
        const double phase = use_override ? phase_override : opt_number(j, "phase", 0.0);
        return separable_jsa(build_state(j["photon1"], grid), build_state(j["photon2"], grid), phase);
    }
    if (type == "pm") {
        return jsa_from_pm(build_state(j["f_plus"], grid), build_state(j["f_minus"], grid),
                           parse_convention(j));
    }
    throw config_error("state.type: unknown pair type \"" + type + "\"");
}

// ---------------------------------------------------------------------------
// output assembly

struct ScenarioResult {
    std::vector<std::pair<std::string, std::string>> files;  // name -> content
    json sidecar;
};

std::string scan_csv(const char* x_name, const std::vector<double>& xs,
                     const std::vector<std::pair<std::string, const std::vector<double>*>>& columns) {
    std::ostringstream out;
    out << x_name;
    for (const auto& [name, col] : columns) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << fmt17(xs[i]);
        for (const auto& [name, col] : columns) out << ',' << fmt17((*col)[i]);
        out << '\n';
    }
    return out.str();
}

// Matrix layout: first row "n_mu, mu values..."; then one row per tau
// (ascending): "tau, cells...". Loads directly as a nonuniform matrix.
std::string matrix_csv(const FrequencyGrid& mu, const TimeGrid& tau, const std::vector<double>& values) {
    std::ostringstream out;
    out << mu.n;
    for (std::size_t m = 0; m < mu.n; ++m) out << ',' << fmt17(mu.sample(m));
    out << '\n';
    for (std::size_t t = 0; t < tau.n; ++t) {
        out << fmt17(tau.sample(t));
        for (std::size_t m = 0; m < mu.n; ++m) out << ',' << fmt17(values[t * mu.n + m]);
        out << '\n';
    }
    return out.str();
}

std::string gnuplot_scan(const std::string& csv_name, const std::string& title) {
    std::ostringstream out;
    out << "set datafile separator comma\n"
        << "set key autotitle columnhead\n"
        << "set grid\n"
        << "set title '" << title << "'\n"
        << "plot '" << csv_name << "' using 1:2 with lines\n"
        << "pause -1\n";
    return out.str();
}

std::string gnuplot_map(const std::string& csv_name, const std::string& title) {
    std::ostringstream out;
    out << "set datafile separator comma\n"
        << "set title '" << title << "'\n"
        << "set view map\n"
        << "splot '" << csv_name << "' nonuniform matrix with pm3d notitle\n"
        << "pause -1\n";
    return out.str();
}

double curve_min(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double curve_max(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

json witness_json(const WitnessReport& report) {
    json points = json::array();
    const std::size_t shown = std::min<std::size_t>(report.points.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
        points.push_back(json{{"mu", report.points[i].mu}, {"tau", report.points[i].tau}});
    }
    return json{{"fired", report.fired}, {"count", report.points.size()}, {"points", points}};
}

// ---------------------------------------------------------------------------
// kind runners

struct Common {
    std::string name;
    unsigned threads = 1;
    bool gnuplot = false;
};

ScenarioResult run_hom_scan(const json& j, const Common& common) {
    Diagnostics diag;
    Context ctx{&diag};
    const FrequencyGrid grid = parse_fgrid(j.at("grid"), "grid", ctx);
    const TimeGrid taus = parse_tgrid(j.at("tau_grid"), "tau_grid", ctx);
    if (!diag.errors.empty()) throw config_error(diag.errors.front());
    const double mu = opt_number(j, "mu", 0.0);

    std::vector<double> phases;
    if (j.contains("phases")) {
        for (const json& p : j["phases"]) phases.push_back(p.get<double>());
        if (j.at("state").at("type").get<std::string>() != "separable") {
            throw config_error("phases: only meaningful for separable states");
        }
    }

    std::vector<std::pair<std::string, std::vector<double>>> curves;
    if (phases.empty()) {
        curves.emplace_back("coincidence", hom_scan(build_pair(j.at("state"), grid), taus, mu));
    } else {
        for (std::size_t p = 0; p < phases.size(); ++p) {
            curves.emplace_back("phase_" + std::to_string(p),
                                hom_scan(build_pair(j.at("state"), grid, phases[p], true), taus, mu));
        }
    }

    const std::vector<double>& first = curves.front().second;
    double max_dev = 0.0;
    for (const auto& [name, curve] : curves) {
        for (std::size_t t = 0; t < curve.size(); ++t) {
            max_dev = std::max(max_dev, std::abs(curve[t] - first[t]));
        }
    }

    // Plateau and dip diagnostics on the first curve.
    const double vis = visibility(first);
    const auto imin = static_cast<std::size_t>(std::min_element(first.begin(), first.end()) - first.begin());
    std::size_t icenter = 0;
    double center_dist = 1e300;
    for (std::size_t t = 0; t < taus.n; ++t) {
        if (std::abs(taus.sample(t)) < center_dist) {
            center_dist = std::abs(taus.sample(t));
            icenter = t;
        }
    }

    ScenarioResult result;
    std::vector<std::pair<std::string, const std::vector<double>*>> cols;
    for (const auto& [name, curve] : curves) cols.emplace_back(name, &curve);
    result.files.emplace_back(common.name + ".csv", scan_csv("tau", taus.samples(), cols));
    if (common.gnuplot) {
        result.files.emplace_back(common.name + ".gp", gnuplot_scan(common.name + ".csv", common.name));
    }
    result.sidecar["derived"] = json{{"min", curve_min(first)},
                                     {"argmin_tau", taus.sample(imin)},
                                     {"value_at_zero_tau", first[icenter]},
                                     {"plateau", 0.5 * (first.front() + first.back())},
                                     {"visibility", vis},
                                     {"max_phase_deviation", max_dev}};
    return result;
}

ScenarioResult run_coincidence_map(const json& j, const Common& common) {
    Diagnostics diag;
    Context ctx{&diag};
    const FrequencyGrid grid = parse_fgrid(j.at("grid"), "grid", ctx);
    const FrequencyGrid mu = parse_fgrid(j.at("mu_grid"), "mu_grid", ctx);
    const TimeGrid tau = parse_tgrid(j.at("tau_grid"), "tau_grid", ctx);
    if (!diag.errors.empty()) throw config_error(diag.errors.front());

    const JointSpectralAmplitude jsa = build_pair(j.at("state"), grid);
    const CoincidenceMap map = coincidence_map(jsa, mu, tau, common.threads);

    ScenarioResult result;
    result.files.emplace_back(common.name + ".csv", matrix_csv(mu, tau, map.values));
    if (common.gnuplot) {
        result.files.emplace_back(common.name + ".gp", gnuplot_map(common.name + ".csv", common.name));
    }
    json derived{{"c_min", curve_min(map.values)},
                 {"c_max", curve_max(map.values)},
                 {"witness", witness_json(witness(map))}};
    if (j.contains("schmidt") && j["schmidt"].get<bool>()) {
        derived["schmidt_number"] = schmidt_number(jsa);
    }
    result.sidecar["derived"] = std::move(derived);
    return result;
}

ScenarioResult run_wigner_map(const json& j, const Common& common) {
    Diagnostics diag;
    Context ctx{&diag};
    const FrequencyGrid grid = parse_fgrid(j.at("grid"), "grid", ctx);
    const FrequencyGrid mu = parse_fgrid(j.at("mu_grid"), "mu_grid", ctx);
    const TimeGrid tau = parse_tgrid(j.at("tau_grid"), "tau_grid", ctx);
    if (!diag.errors.empty()) throw config_error(diag.errors.front());

    const SpectralAmplitude fminus = build_state(j.at("f_minus"), grid);
    const WignerMap map = wigner_map(fminus, mu, tau, WignerPath::Auto, common.threads);

    ScenarioResult result;
    result.files.emplace_back(common.name + ".csv", matrix_csv(mu, tau, map.values));
    if (common.gnuplot) {
        result.files.emplace_back(common.name + ".gp", gnuplot_map(common.name + ".csv", common.name));
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < map.values.size(); ++i) {
        if (map.values[i] > map.values[best]) best = i;
    }
    json derived{{"w_min", curve_min(map.values)},
                 {"w_max", curve_max(map.values)},
                 {"peak", json{{"mu", mu.sample(best % mu.n)},
                               {"tau", tau.sample(best / mu.n)},
                               {"value", map.values[best]}}},
                 {"negativity_volume", negativity_volume(map)},
                 {"witness", witness_json(witness(map))}};

    if (j.contains("compare_hom") && j["compare_hom"].get<bool>()) {
        if (!j.contains("f_plus")) throw config_error("compare_hom requires f_plus");
        const JointSpectralAmplitude jsa =
            jsa_from_pm(build_state(j.at("f_plus"), grid), fminus, PMConvention::HalfDifference);
        const CoincidenceMap cmap = coincidence_map(jsa, mu, tau, common.threads);
        const WignerMap reconstructed = wigner_from_hom(cmap);
        double err = 0.0;
        for (std::size_t i = 0; i < map.values.size(); ++i) {
            err += (reconstructed.values[i] - map.values[i]) * (reconstructed.values[i] - map.values[i]);
        }
        derived["hom_reconstruction_rms"] = std::sqrt(err / static_cast<double>(map.values.size()));
        result.files.emplace_back(common.name + "_from_hom.csv", matrix_csv(mu, tau, reconstructed.values));
    }

    if (j.contains("marginals") && j["marginals"].get<bool>()) {
        const Marginals m = marginals(map);
        double mass_mu = 0.0, mass_tau = 0.0;
        for (double v : m.spectral) mass_mu += v * mu.step();
        for (double v : m.temporal) mass_tau += v * tau.step();
        result.files.emplace_back(common.name + "_marginal_mu.csv",
                                  scan_csv("mu", mu.samples(), {{"density", &m.spectral}}));
        result.files.emplace_back(common.name + "_marginal_tau.csv",
                                  scan_csv("tau", tau.samples(), {{"density", &m.temporal}}));
        derived["marginal_mass_mu"] = mass_mu;
        derived["marginal_mass_tau"] = mass_tau;
    }

    result.sidecar["derived"] = std::move(derived);
    return result;
}

PhaseDistribution parse_dist(const json& j, const std::string& path, const Context& ctx) {
    check_unknown(j, path, {"type", "phi_a", "phi_b", "phi"}, ctx);
    const std::string type = j.contains("type") && j["type"].is_string() ? j["type"].get<std::string>() : "";
    if (type == "uniform") return PhaseDistribution::uniform();
    if (type == "two-point") {
        return PhaseDistribution::two_point(need_number(j, path, "phi_a", ctx), need_number(j, path, "phi_b", ctx));
    }
    if (type == "fixed") return PhaseDistribution::fixed(need_number(j, path, "phi", ctx));
    ctx.error(path + ".type: expected uniform|two-point|fixed");
    return PhaseDistribution::uniform();
}

ScenarioResult run_classical_dip(const json& j, const Common& common) {
    Diagnostics diag;
    Context ctx{&diag};
    const FrequencyGrid grid = parse_fgrid(j.at("grid"), "grid", ctx);
    const TimeGrid ts = parse_tgrid(j.at("t_grid"), "t_grid", ctx);
    if (!diag.errors.empty()) throw config_error(diag.errors.front());

    const SpectralAmplitude alpha = build_state(j.at("alpha"), grid);
    if (!j.contains("cases") || !j["cases"].is_array() || j["cases"].empty()) {
        throw config_error("cases: expected a non-empty array");
    }

    std::vector<std::pair<std::string, std::vector<double>>> curves;
    json per_case = json::array();
    for (std::size_t c = 0; c < j["cases"].size(); ++c) {
        const json& cj = j["cases"][c];
        check_unknown(cj, "cases[" + std::to_string(c) + "]", {"name", "dist"}, ctx);
        const std::string name =
            cj.contains("name") ? cj["name"].get<std::string>() : "case_" + std::to_string(c);
        const PhaseDistribution dist = parse_dist(cj.at("dist"), "cases.dist", ctx);
        if (!diag.errors.empty()) throw config_error(diag.errors.front());
        const CoherentInput input{alpha, dist};
        std::vector<double> curve = correlation_scan(input, ts);
        per_case.push_back(json{{"name", name},
                                {"c_at_zero", intensity_correlation(input, 0.0)},
                                {"visibility", visibility(curve)}});
        curves.emplace_back(name, std::move(curve));
    }

    if (j.contains("second_order") && j["second_order"].get<bool>()) {
        const CoherentInput input{alpha, PhaseDistribution::uniform()};
        std::vector<double> c2(ts.n);
        for (std::size_t k = 0; k < ts.n; ++k) c2[k] = second_order_only_correlation(input, ts.sample(k));
        per_case.push_back(json{{"name", "second_order_only"},
                                {"c_at_zero", second_order_only_correlation(input, 0.0)},
                                {"visibility", visibility(c2)}});
        curves.emplace_back("second_order_only", std::move(c2));
    }

    ScenarioResult result;
    std::vector<std::pair<std::string, const std::vector<double>*>> cols;
    for (const auto& [name, curve] : curves) cols.emplace_back(name, &curve);
    result.files.emplace_back(common.name + ".csv", scan_csv("t", ts.samples(), cols));
    if (common.gnuplot) {
        result.files.emplace_back(common.name + ".gp", gnuplot_scan(common.name + ".csv", common.name));
    }
    result.sidecar["derived"] = json{{"cases", per_case}};
    return result;
}

ScenarioResult run_pump_state(const json& j, const Common& common) {
    Diagnostics diag;
    Context ctx{&diag};
    const DeviceConfig device = parse_device(j.at("device"), "device", ctx);
    const std::vector<PumpBeam> beams = parse_beams(j.at("beams"), "beams", ctx);
    const FrequencyGrid out = parse_fgrid(j.at("out_grid"), "out_grid", ctx);
    if (!diag.errors.empty()) throw config_error(diag.errors.front());
    const auto n_z = static_cast<std::size_t>(opt_number(j, "z_samples", 1024.0));

    SpectralAmplitude fminus = fminus_from_beams(beams, device, out, n_z);
    if (j.contains("cavity")) {
        const CavityConfig cavity = parse_cavity(j["cavity"], "cavity", ctx);
        if (!diag.errors.empty()) throw config_error(diag.errors.front());
        fminus = cavity_comb(fminus, cavity);
    }

    ScenarioResult result;
    std::vector<double> re(out.n), im(out.n), abs2(out.n);
    for (std::size_t k = 0; k < out.n; ++k) {
        re[k] = fminus.values[k].real();
        im[k] = fminus.values[k].imag();
        abs2[k] = std::norm(fminus.values[k]);
    }
    result.files.emplace_back(common.name + ".csv",
                              scan_csv("omega", out.samples(),
                                       {{"re", &re}, {"im", &im}, {"abs2", &abs2}}));

    json derived;
    if (j.contains("time_profile") && j["time_profile"].get<bool>()) {
        auto [gt, tg] = fourier_to_time(fminus.values, fminus.grid);
        std::vector<double> tre(tg.n), tim(tg.n), tabs(tg.n);
        for (std::size_t k = 0; k < tg.n; ++k) {
            tre[k] = gt[k].real();
            tim[k] = gt[k].imag();
            tabs[k] = std::abs(gt[k]);
        }
        result.files.emplace_back(common.name + "_time.csv",
                                  scan_csv("t", tg.samples(), {{"re", &tre}, {"im", &tim}, {"abs", &tabs}}));
    }

    if (j.contains("wigner")) {
        const json& wj = j["wigner"];
        check_unknown(wj, "wigner", {"mu_grid", "tau_grid"}, ctx);
        const FrequencyGrid mu = parse_fgrid(wj.at("mu_grid"), "wigner.mu_grid", ctx);
        const TimeGrid tau = parse_tgrid(wj.at("tau_grid"), "wigner.tau_grid", ctx);
        if (!diag.errors.empty()) throw config_error(diag.errors.front());
        const WignerMap map = wigner_map(fminus, mu, tau, WignerPath::Auto, common.threads);
        result.files.emplace_back(common.name + "_wigner.csv", matrix_csv(mu, tau, map.values));
        if (common.gnuplot) {
            result.files.emplace_back(common.name + "_wigner.gp",
                                      gnuplot_map(common.name + "_wigner.csv", common.name));
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < map.values.size(); ++i) {
            if (map.values[i] > map.values[best]) best = i;
        }
        derived["peak"] = json{{"mu", mu.sample(best % mu.n)},
                               {"tau", tau.sample(best / mu.n)},
                               {"value", map.values[best]}};
    }

    if (j.contains("closed_form_check") && j["closed_form_check"].get<bool>() && beams.size() == 1) {
        const GaussianFminusParams p = gaussian_fminus_params(beams.front(), device);
        const SpectralAmplitude closed = gaussian_fminus(beams.front(), device, out);
        double err = 0.0;
        for (std::size_t k = 0; k < out.n; ++k) err += std::norm(fminus.values[k] - closed.values[k]);
        // Measured center and width from the second moment of |f-|^2.
        double mass = 0.0, mean = 0.0;
        for (std::size_t k = 0; k < out.n; ++k) {
            mass += abs2[k];
            mean += abs2[k] * out.sample(k);
        }
        mean /= mass;
        double var = 0.0;
        for (std::size_t k = 0; k < out.n; ++k) {
            var += abs2[k] * (out.sample(k) - mean) * (out.sample(k) - mean);
        }
        var /= mass;
        derived["closed_form"] = json{{"omega_center", p.omega_center},
                                      {"tau0", p.tau0},
                                      {"width", p.width},
                                      {"rms_vs_integral", std::sqrt(err / static_cast<double>(out.n))},
                                      {"measured_center", mean},
                                      {"measured_width", 2.0 * std::sqrt(var)}};
    }

    result.sidecar["derived"] = std::move(derived);
    return result;
}

ScenarioResult run_comb_readout(const json& j, const Common& common) {
    Diagnostics diag;
    Context ctx{&diag};
    ScenarioResult result;
    json derived;

    if (j.contains("readout")) {
        const json& rj = j["readout"];
        check_unknown(rj, "readout", {"grid", "state_a", "state_b", "tau_grid"}, ctx);
        const FrequencyGrid grid = parse_fgrid(rj.at("grid"), "readout.grid", ctx);
        const TimeGrid taus = parse_tgrid(rj.at("tau_grid"), "readout.tau_grid", ctx);
        if (!diag.errors.empty()) throw config_error(diag.errors.front());
        CombState a{build_state(rj.at("state_a"), grid), 0.0, 0.0, 0.0, LogicalLabel::Raw};
        CombState b{build_state(rj.at("state_b"), grid), 0.0, 0.0, 0.0, LogicalLabel::Raw};
        const std::vector<double> trace = hom_readout(a, b, taus);
        result.files.emplace_back(common.name + ".csv",
                                  scan_csv("tau", taus.samples(), {{"coincidence", &trace}}));
        if (common.gnuplot) {
            result.files.emplace_back(common.name + ".gp", gnuplot_scan(common.name + ".csv", common.name));
        }
        json readout_derived{{"min", curve_min(trace)}, {"max", curve_max(trace)}};

        // Satellite analysis against the double-sided echo series when the
        // comb came from a facet cavity.
        if (rj.at("state_b").contains("cavity")) {
            Diagnostics scratch;
            Context cctx{&scratch};
            const CavityConfig cavity = parse_cavity(rj.at("state_b").at("cavity"), "cavity", cctx);
            if (!scratch.errors.empty()) throw config_error(scratch.errors.front());
            const double tau_sat = cavity.roundtrip_time / 2.0;
            const auto value_near = [&](double t) {
                std::size_t best = 0;
                double dist = 1e300;
                for (std::size_t k = 0; k < taus.n; ++k) {
                    if (std::abs(taus.sample(k) - t) < dist) {
                        dist = std::abs(taus.sample(k) - t);
                        best = k;
                    }
                }
                return trace[best];
            };
            const double central_depth = 0.5 - value_near(0.0);
            const double satellite_depth = 0.5 - 0.5 * (value_near(tau_sat) + value_near(-tau_sat));
            const double R = cavity.reflectivity;
            double c0 = 0.0, c1 = 0.0;
            for (int k = -64; k <= 64; ++k) {
                c0 += std::pow(R, std::abs(k)) * std::pow(R, std::abs(k));
                c1 += std::pow(R, std::abs(k)) * std::pow(R, std::abs(1 - k));
            }
            readout_derived["satellite"] = json{{"delay", tau_sat},
                                                {"central_depth", central_depth},
                                                {"satellite_depth", satellite_depth},
                                                {"measured_ratio", satellite_depth / central_depth},
                                                {"echo_series_ratio", c1 / c0}};
        }
        derived["readout"] = std::move(readout_derived);
    }

    if (j.contains("gates")) {
        const json& gj = j["gates"];
        check_unknown(gj, "gates", {"grid", "periodic_grid", "spacing", "tooth_width", "envelope_width"}, ctx);
        const FrequencyGrid grid = parse_fgrid(gj.at("grid"), "gates.grid", ctx);
        const FrequencyGrid pgrid = parse_fgrid(gj.at("periodic_grid"), "gates.periodic_grid", ctx);
        const double spacing = need_number(gj, "gates", "spacing", ctx);
        const double tooth = need_number(gj, "gates", "tooth_width", ctx);
        const double envelope = need_number(gj, "gates", "envelope_width", ctx);
        if (!diag.errors.empty()) throw config_error(diag.errors.front());

        const CombState zero = encode(LogicalLabel::Zero, spacing, tooth, envelope, grid);
        const CombState one = encode(LogicalLabel::One, spacing, tooth, envelope, grid);
        const CombState plus = encode(LogicalLabel::Plus, spacing, tooth, envelope, grid);
        const CombState minus = encode(LogicalLabel::Minus, spacing, tooth, envelope, grid);
        const ShiftGate x = ShiftGate::pauli_x(spacing);
        const ShiftGate z = ShiftGate::pauli_z(spacing);

        const CombState ideal = periodic_delta_comb(pgrid, spacing);
        const CombState xz = apply_gate(apply_gate(ideal, z), x);
        const CombState zx = apply_gate(apply_gate(ideal, x), z);

        derived["gates"] = json{
            {"x_fidelity", std::abs(logical_overlap(one, apply_gate(zero, x)))},
            {"z_fidelity", std::abs(logical_overlap(minus, apply_gate(plus, z)))},
            {"xx_overlap", std::abs(logical_overlap(ideal, apply_gate(apply_gate(ideal, x), x)))},
            {"zz_overlap", std::abs(logical_overlap(ideal, apply_gate(apply_gate(ideal, z), z)))},
            {"commutation_abs", std::abs(logical_overlap(xz, zx))},
            {"zero_one_overlap", std::abs(logical_overlap(zero, one))}};
    }

    if (!j.contains("readout") && !j.contains("gates")) {
        throw config_error("comb-readout: needs a readout block, a gates block, or both");
    }
    result.sidecar["derived"] = std::move(derived);
    return result;
}

ScenarioResult run_spectrogram(const json& j, const Common& common) {
    Diagnostics diag;
    Context ctx{&diag};
    const FrequencyGrid grid = parse_fgrid(j.at("grid"), "grid", ctx);
    const FrequencyGrid mu = parse_fgrid(j.at("mu_grid"), "mu_grid", ctx);
    const TimeGrid tau = parse_tgrid(j.at("tau_grid"), "tau_grid", ctx);
    if (!diag.errors.empty()) throw config_error(diag.errors.front());

    const SpectralAmplitude signal = build_state(j.at("signal"), grid);
    const SpectralAmplitude window = build_state(j.at("window"), grid);

    std::vector<double> values(mu.n * tau.n, 0.0);
    parallel_for(mu.n, common.threads, [&](std::size_t m) {
        for (std::size_t t = 0; t < tau.n; ++t) {
            values[t * mu.n + m] = spectrogram(signal, window, {mu.sample(m), tau.sample(t)});
        }
    });

    ScenarioResult result;
    result.files.emplace_back(common.name + ".csv", matrix_csv(mu, tau, values));
    if (common.gnuplot) {
        result.files.emplace_back(common.name + ".gp", gnuplot_map(common.name + ".csv", common.name));
    }
    json derived{{"s_min", curve_min(values)}, {"s_max", curve_max(values)}};

    if (j.contains("cross_check") && j["cross_check"].get<bool>()) {
        const JointSpectralAmplitude jsa = separable_jsa(signal, window, 0.0);
        double max_dev = 0.0;
        for (std::size_t t = 0; t < tau.n; ++t) {
            for (std::size_t m = 0; m < mu.n; ++m) {
                const double c =
                    coincidence(jsa, {mu.sample(m) / kArmShiftPerMu, tau.sample(t)});
                max_dev = std::max(max_dev, std::abs(c - values[t * mu.n + m]));
            }
        }
        derived["max_deviation_vs_hom"] = max_dev;
    }
    result.sidecar["derived"] = std::move(derived);
    return result;
}

// ---------------------------------------------------------------------------
// top level

const std::array<const char*, 7> kKinds = {"hom-scan",      "coincidence-map", "wigner-map", "classical-dip",
                                           "pump-state",    "comb-readout",    "spectrogram"};

void validate_top_level(const json& j, Diagnostics& diag) {
    Context ctx{&diag};
    if (!j.is_object()) {
        ctx.error("scenario: top level must be a JSON object");
        return;
    }
    if (!j.contains("kind") || !j["kind"].is_string()) {
        ctx.error("kind: required string field is missing");
        return;
    }
    const std::string kind = j["kind"].get<std::string>();
    if (std::find_if(kKinds.begin(), kKinds.end(), [&](const char* k) { return kind == k; }) == kKinds.end()) {
        ctx.error("kind: unknown scenario kind \"" + kind + "\"");
        return;
    }
    if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty()) {
        ctx.error("name: required non-empty string field is missing");
    } else {
        const std::string name = j["name"].get<std::string>();
        if (name.find('/') != std::string::npos || name.find('\\') != std::string::npos ||
            name.find("..") != std::string::npos) {
            ctx.error("name: must be a plain file stem (no path separators)");
        }
    }

    const auto need = [&](const char* key) {
        if (!j.contains(key)) ctx.error(std::string(key) + ": required field is missing");
        return j.contains(key);
    };

    if (kind == "hom-scan") {
        check_unknown(j, "scenario", {"kind", "name", "comment", "grid", "state", "tau_grid", "mu", "phases"},
                      ctx);
        if (need("grid")) parse_fgrid(j["grid"], "grid", ctx);
        if (need("tau_grid")) parse_tgrid(j["tau_grid"], "tau_grid", ctx);
        if (need("state")) validate_pair_spec(j["state"], "state", ctx);
        if (j.contains("phases") && !j["phases"].is_array()) ctx.error("phases: expected an array of numbers");
    } else if (kind == "coincidence-map") {
        check_unknown(j, "scenario",
                      {"kind", "name", "comment", "grid", "state", "mu_grid", "tau_grid", "schmidt"}, ctx);
        if (need("grid")) parse_fgrid(j["grid"], "grid", ctx);
        if (need("mu_grid")) parse_fgrid(j["mu_grid"], "mu_grid", ctx);
        if (need("tau_grid")) parse_tgrid(j["tau_grid"], "tau_grid", ctx);
        if (need("state")) validate_pair_spec(j["state"], "state", ctx);
    } else if (kind == "wigner-map") {
        check_unknown(j, "scenario",
                      {"kind", "name", "comment", "grid", "f_minus", "f_plus", "mu_grid", "tau_grid",
                       "compare_hom", "marginals"},
                      ctx);
        if (need("grid")) parse_fgrid(j["grid"], "grid", ctx);
        if (need("mu_grid")) parse_fgrid(j["mu_grid"], "mu_grid", ctx);
        if (need("tau_grid")) parse_tgrid(j["tau_grid"], "tau_grid", ctx);
        if (need("f_minus")) validate_state_spec(j["f_minus"], "f_minus", ctx);
        if (j.contains("f_plus")) validate_state_spec(j["f_plus"], "f_plus", ctx);
        if (j.contains("compare_hom") && j["compare_hom"].is_boolean() && j["compare_hom"].get<bool>() &&
            !j.contains("f_plus")) {
            ctx.error("compare_hom: requires f_plus");
        }
    } else if (kind == "classical-dip") {
        check_unknown(j, "scenario",
                      {"kind", "name", "comment", "grid", "alpha", "t_grid", "cases", "second_order"}, ctx);
        if (need("grid")) parse_fgrid(j["grid"], "grid", ctx);
        if (need("t_grid")) parse_tgrid(j["t_grid"], "t_grid", ctx);
        if (need("alpha")) validate_state_spec(j["alpha"], "alpha", ctx);
        if (need("cases")) {
            if (!j["cases"].is_array() || j["cases"].empty()) {
                ctx.error("cases: expected a non-empty array");
            } else {
                for (std::size_t c = 0; c < j["cases"].size(); ++c) {
                    const json& cj = j["cases"][c];
                    const std::string path = "cases[" + std::to_string(c) + "]";
                    check_unknown(cj, path, {"name", "dist"}, ctx);
                    if (!cj.contains("dist")) {
                        ctx.error(path + ".dist: missing");
                    } else {
                        parse_dist(cj["dist"], path + ".dist", ctx);
                    }
                }
            }
        }
    } else if (kind == "pump-state") {
        check_unknown(j, "scenario",
                      {"kind", "name", "comment", "device", "beams", "z_samples", "cavity", "out_grid",
                       "wigner", "time_profile", "closed_form_check"},
                      ctx);
        if (need("device")) parse_device(j["device"], "device", ctx);
        if (need("beams")) parse_beams(j["beams"], "beams", ctx);
        if (need("out_grid")) parse_fgrid(j["out_grid"], "out_grid", ctx);
        if (j.contains("cavity")) parse_cavity(j["cavity"], "cavity", ctx);
        if (j.contains("wigner")) {
            check_unknown(j["wigner"], "wigner", {"mu_grid", "tau_grid"}, ctx);
            if (j["wigner"].contains("mu_grid")) {
                parse_fgrid(j["wigner"]["mu_grid"], "wigner.mu_grid", ctx);
            } else {
                ctx.error("wigner.mu_grid: missing");
            }
            if (j["wigner"].contains("tau_grid")) {
                parse_tgrid(j["wigner"]["tau_grid"], "wigner.tau_grid", ctx);
            } else {
                ctx.error("wigner.tau_grid: missing");
            }
        }
    } else if (kind == "comb-readout") {
        check_unknown(j, "scenario", {"kind", "name", "comment", "readout", "gates"}, ctx);
        if (!j.contains("readout") && !j.contains("gates")) {
            ctx.error("comb-readout: needs a readout block, a gates block, or both");
        }
        if (j.contains("readout")) {
            const json& rj = j["readout"];
            check_unknown(rj, "readout", {"grid", "state_a", "state_b", "tau_grid"}, ctx);
            for (const char* key : {"grid", "state_a", "state_b", "tau_grid"}) {
                if (!rj.contains(key)) ctx.error(std::string("readout.") + key + ": missing");
            }
            if (rj.contains("grid")) parse_fgrid(rj["grid"], "readout.grid", ctx);
            if (rj.contains("tau_grid")) parse_tgrid(rj["tau_grid"], "readout.tau_grid", ctx);
            if (rj.contains("state_a")) validate_state_spec(rj["state_a"], "readout.state_a", ctx);
            if (rj.contains("state_b")) validate_state_spec(rj["state_b"], "readout.state_b", ctx);
        }
        if (j.contains("gates")) {
            const json& gj = j["gates"];
            check_unknown(gj, "gates", {"grid", "periodic_grid", "spacing", "tooth_width", "envelope_width"},
                          ctx);
            for (const char* key : {"grid", "periodic_grid", "spacing", "tooth_width", "envelope_width"}) {
                if (!gj.contains(key)) ctx.error(std::string("gates.") + key + ": missing");
            }
            if (gj.contains("grid")) parse_fgrid(gj["grid"], "gates.grid", ctx);
            if (gj.contains("periodic_grid")) parse_fgrid(gj["periodic_grid"], "gates.periodic_grid", ctx);
        }
    } else if (kind == "spectrogram") {
        check_unknown(j, "scenario",
                      {"kind", "name", "comment", "grid", "signal", "window", "mu_grid", "tau_grid",
                       "cross_check"},
                      ctx);
        if (need("grid")) parse_fgrid(j["grid"], "grid", ctx);
        if (need("mu_grid")) parse_fgrid(j["mu_grid"], "mu_grid", ctx);
        if (need("tau_grid")) parse_tgrid(j["tau_grid"], "tau_grid", ctx);
        if (need("signal")) validate_state_spec(j["signal"], "signal", ctx);
        if (need("window")) validate_state_spec(j["window"], "window", ctx);
    }
}

json parse_json_text(const std::string& text, Diagnostics& diag) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        diag.errors.push_back("scenario: not valid JSON");
        return json();
    }
    return j;
}

}  // namespace

Diagnostics validate_scenario_text(const std::string& text) {
    Diagnostics diag;
    const json j = parse_json_text(text, diag);
    if (!diag.errors.empty()) return diag;
    validate_top_level(j, diag);
    return diag;
}

std::vector<std::string> run_scenario_text(const std::string& text, const RunOptions& opts) {
    Diagnostics diag;
    const json j = parse_json_text(text, diag);
    if (diag.errors.empty()) validate_top_level(j, diag);
    if (!diag.errors.empty()) throw config_error(diag.errors.front());

    Common common;
    common.name = j["name"].get<std::string>();
    common.threads = resolve_thread_count(opts.threads);
    common.gnuplot = opts.gnuplot;

    warnings::Capture captured;
    const std::string kind = j["kind"].get<std::string>();
    ScenarioResult result;
    if (kind == "hom-scan") {
        result = run_hom_scan(j, common);
    } else if (kind == "coincidence-map") {
        result = run_coincidence_map(j, common);
    } else if (kind == "wigner-map") {
        result = run_wigner_map(j, common);
    } else if (kind == "classical-dip") {
        result = run_classical_dip(j, common);
    } else if (kind == "pump-state") {
        result = run_pump_state(j, common);
    } else if (kind == "comb-readout") {
        result = run_comb_readout(j, common);
    } else {
        result = run_spectrogram(j, common);
    }

    // Sidecar assembly: resolved scenario, provenance, derived values.
    json sidecar;
    sidecar["scenario"] = j;
    sidecar["library_version"] = kVersion;
    sidecar["derived"] = result.sidecar.contains("derived") ? result.sidecar["derived"] : json::object();
    json files = json::array();
    for (const auto& [name, content] : result.files) files.push_back(name);
    files.push_back(common.name + ".json");
    sidecar["outputs"] = files;
    json warn_list = json::array();
    for (const std::string& w : captured.messages()) warn_list.push_back(w);
    sidecar["warnings"] = warn_list;
    result.files.emplace_back(common.name + ".json", sidecar.dump(2) + "\n");

    // All computation succeeded; only now touch the filesystem.
    std::error_code ec;
    std::filesystem::create_directories(opts.out_dir, ec);
    if (ec) throw io_error("cannot create output directory: " + opts.out_dir.string());
    std::vector<std::string> written;
    for (const auto& [name, content] : result.files) {
        const std::filesystem::path path = opts.out_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw io_error("cannot open for writing: " + path.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw io_error("write failed: " + path.string());
        written.push_back(name);
    }
    return written;
}

unsigned resolve_thread_count(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("HOMSIM_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) return static_cast<unsigned>(parsed);
    }
    return default_thread_count();
}

}  // namespace homsim::cli
