#include "qslit/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "qslit/analysis.hpp"
#include "qslit/approx.hpp"

namespace qslit::cli {

using nlohmann::json;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw ValidationError("grid: point count must be at least 1");
    if (n == 1) return {lo};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[std::size_t(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw ValidationError("expected a number or a [re, im] pair");
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

const std::set<std::string> kSlitMethods{"exact", "semiclassical", "truncation", "fourth_order"};
const std::set<std::string> kGravityMethods{"gravity", "gravity_semiclassical"};

}  // namespace

std::vector<double> GridConfig::z_values() const { return linspace(z_min, z_max, n_z); }
std::vector<double> GridConfig::y_values() const { return linspace(y_min, y_max, n_y); }

Aperture ApertureConfig::build() const {
    if (type == "rect") return RectAperture{half_width_y, half_height_z, center_y, center_z};
    if (type == "double") return DoubleSlitAperture{center_offset_z, half_height_z, half_width_y};
    if (type == "ellipse") {
        if (!(semi_y > 0.0) || !(semi_z > 0.0)) throw ValidationError("ellipse aperture: semi-axes must be positive");
        MaskAperture m;
        const double cy = center_y, cz = center_z, sy = semi_y, sz = semi_z;
        m.indicator = [=](double y, double z) {
            const double u = (y - cy) / sy, v = (z - cz) / sz;
            return u * u + v * v <= 1.0;
        };
        m.y_lo = cy - sy;
        m.y_hi = cy + sy;
        m.z_lo = cz - sz;
        m.z_hi = cz + sz;
        return m;
    }
    throw ValidationError("unknown aperture type '" + type + "'");
}

BoundaryCondition boundary_condition_from_name(const std::string& name) {
    if (name == "dirichlet") return BoundaryCondition::dirichlet();
    if (name == "neumann") return BoundaryCondition::neumann();
    if (name == "free") return BoundaryCondition::free();
    throw ValidationError("unknown boundary condition '" + name + "'");
}

void ScenarioConfig::validate() const {
    if (schema_version != kSchemaVersion) {
        throw ValidationError("unsupported schema_version " + std::to_string(schema_version));
    }
    if (name.empty()) throw ValidationError("name must not be empty");
    for (char ch : name) {
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.')) {
            throw ValidationError("name may only contain letters, digits, '-', '_' and '.'");
        }
    }
    try {
        particle.validate();
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
    if (kind == "neon") {
        if (!(neon.l1 > 0.0) || !(neon.l2 >= 0.0) || !(neon.g > 0.0)) {
            throw ValidationError("neon: need l1 > 0, l2 >= 0, g > 0");
        }
        return;
    }
    if (kind != "slit" && kind != "gravity") throw ValidationError("unknown kind '" + kind + "'");
    if (times.empty()) throw ValidationError("at least one time value is required");
    for (double t : times) {
        if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("times must be positive and finite");
    }
    if (grid.n_z < 1 || grid.n_y < 1) throw ValidationError("grid: empty grid (n_z and n_y must be >= 1)");
    if ((grid.n_z > 1 && !(grid.z_max > grid.z_min)) || (grid.n_y > 1 && !(grid.y_max > grid.y_min))) {
        throw ValidationError("grid: max must exceed min when more than one point is requested");
    }
    try {
        quadrature.validate();
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
    if (kind == "slit") {
        if (!kSlitMethods.count(method)) throw ValidationError("method '" + method + "' is not valid for slit scenarios");
        if (!(x0 < x1) || !(x1 < x_screen)) throw ValidationError("geometry: require x0 < x1 < x_screen");
        const Aperture ap = aperture.build();
        if (aperture.type != "ellipse") {
            if (!(aperture.half_width_y > 0.0) || !(aperture.half_height_z > 0.0)) {
                throw ValidationError("aperture: half sizes must be positive");
            }
        }
        if (aperture.type == "double" && !(aperture.center_offset_z > 0.0)) {
            throw ValidationError("double aperture: center_offset_z must be positive");
        }
        if (aperture.type == "ellipse" && (method == "truncation" || method == "fourth_order")) {
            throw ValidationError("truncation methods need rectangular apertures");
        }
        (void)ap;
    } else {
        if (!kGravityMethods.count(method)) {
            throw ValidationError("method '" + method + "' is not valid for gravity scenarios");
        }
        if (!(gravity.g >= 0.0) || !(gravity.slit_z > 0.0) || !(gravity.screen_z > gravity.slit_z) ||
            !(gravity.half_x > 0.0) || !(gravity.half_y > 0.0)) {
            throw ValidationError("gravity: need g >= 0, 0 < slit_z < screen_z and positive half sizes");
        }
    }
}

ScenarioConfig config_from_json(const json& j) {
    try {
        if (!j.is_object()) throw ValidationError("config must be a JSON object");
        if (!j.contains("schema_version")) throw ValidationError("config is missing schema_version");
        static const std::set<std::string> known{"schema_version", "name",     "kind",   "particle", "geometry",
                                                 "aperture",       "boundary_condition", "t", "grid",
                                                 "method",         "quadrature", "gravity", "neon", "description"};
        for (const auto& item : j.items()) {
            if (!known.count(item.key())) throw ValidationError("config: unknown key '" + item.key() + "'");
        }
        ScenarioConfig c;
        c.schema_version = j.at("schema_version").get<int>();
        read_opt(j, "name", c.name);
        read_opt(j, "kind", c.kind);
        if (j.contains("particle")) {
            read_opt(j["particle"], "mass", c.particle.mass);
            read_opt(j["particle"], "hbar", c.particle.hbar);
        }
        if (j.contains("geometry")) {
            const json& g = j["geometry"];
            read_opt(g, "x0", c.x0);
            read_opt(g, "y0", c.y0);
            read_opt(g, "z0", c.z0);
            read_opt(g, "x1", c.x1);
            read_opt(g, "x_screen", c.x_screen);
        }
        if (j.contains("aperture")) {
            const json& a = j["aperture"];
            read_opt(a, "type", c.aperture.type);
            read_opt(a, "half_width_y", c.aperture.half_width_y);
            read_opt(a, "half_height_z", c.aperture.half_height_z);
            read_opt(a, "center_y", c.aperture.center_y);
            read_opt(a, "center_z", c.aperture.center_z);
            read_opt(a, "center_offset_z", c.aperture.center_offset_z);
            read_opt(a, "semi_y", c.aperture.semi_y);
            read_opt(a, "semi_z", c.aperture.semi_z);
        }
        if (j.contains("boundary_condition")) {
            const json& b = j["boundary_condition"];
            if (b.is_string()) {
                c.bc_name = b.get<std::string>();
                c.bc = boundary_condition_from_name(c.bc_name);
            } else if (b.is_object()) {
                c.bc_name = "custom";
                c.bc = {complex_from_json(b.at("lambda1")), complex_from_json(b.at("lambda2"))};
            } else {
                throw ValidationError("boundary_condition must be a name or {lambda1, lambda2}");
            }
        }
        if (j.contains("t")) {
            const json& t = j["t"];
            c.times = t.is_array() ? t.get<std::vector<double>>() : std::vector<double>{t.get<double>()};
        }
        if (j.contains("grid")) {
            const json& g = j["grid"];
            read_opt(g, "z_min", c.grid.z_min);
            read_opt(g, "z_max", c.grid.z_max);
            read_opt(g, "n_z", c.grid.n_z);
            if (g.contains("y")) {
                c.grid.y_min = c.grid.y_max = g["y"].get<double>();
                c.grid.n_y = 1;
            }
            read_opt(g, "y_min", c.grid.y_min);
            read_opt(g, "y_max", c.grid.y_max);
            read_opt(g, "n_y", c.grid.n_y);
        }
        read_opt(j, "method", c.method);
        if (j.contains("quadrature")) {
            const json& q = j["quadrature"];
            read_opt(q, "relative_tolerance", c.quadrature.relative_tolerance);
            read_opt(q, "absolute_tolerance", c.quadrature.absolute_tolerance);
            read_opt(q, "max_subdivisions", c.quadrature.max_subdivisions);
            read_opt(q, "panel_oscillation_budget", c.quadrature.panel_oscillation_budget);
        }
        if (j.contains("gravity")) {
            const json& g = j["gravity"];
            read_opt(g, "g", c.gravity.g);
            read_opt(g, "slit_z", c.gravity.slit_z);
            read_opt(g, "screen_z", c.gravity.screen_z);
            read_opt(g, "half_x", c.gravity.half_x);
            read_opt(g, "half_y", c.gravity.half_y);
            read_opt(g, "verbatim_second_factor", c.gravity.verbatim_second_factor);
        }
        if (j.contains("neon")) {
            const json& n = j["neon"];
            read_opt(n, "l1", c.neon.l1);
            read_opt(n, "l2", c.neon.l2);
            read_opt(n, "g", c.neon.g);
        }
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
}

json config_to_json(const ScenarioConfig& c) {
    json j;
    j["schema_version"] = c.schema_version;
    j["name"] = c.name;
    j["kind"] = c.kind;
    j["particle"] = {{"mass", c.particle.mass}, {"hbar", c.particle.hbar}};
    if (c.kind == "neon") {
        j["neon"] = {{"l1", c.neon.l1}, {"l2", c.neon.l2}, {"g", c.neon.g}};
        return j;
    }
    if (c.bc_name == "custom") {
        j["boundary_condition"] = {{"lambda1", complex_json(c.bc.lambda1)}, {"lambda2", complex_json(c.bc.lambda2)}};
    } else {
        j["boundary_condition"] = c.bc_name;
    }
    j["t"] = c.times;
    j["grid"] = {{"z_min", c.grid.z_min}, {"z_max", c.grid.z_max}, {"n_z", c.grid.n_z},
                 {"y_min", c.grid.y_min}, {"y_max", c.grid.y_max}, {"n_y", c.grid.n_y}};
    j["method"] = c.method;
    j["quadrature"] = {{"relative_tolerance", c.quadrature.relative_tolerance},
                       {"absolute_tolerance", c.quadrature.absolute_tolerance},
                       {"max_subdivisions", c.quadrature.max_subdivisions},
                       {"panel_oscillation_budget", c.quadrature.panel_oscillation_budget}};
    if (c.kind == "slit") {
        j["geometry"] = {{"x0", c.x0}, {"y0", c.y0}, {"z0", c.z0}, {"x1", c.x1}, {"x_screen", c.x_screen}};
        json a = {{"type", c.aperture.type}, {"center_y", c.aperture.center_y}, {"center_z", c.aperture.center_z}};
        if (c.aperture.type == "ellipse") {
            a["semi_y"] = c.aperture.semi_y;
            a["semi_z"] = c.aperture.semi_z;
        } else {
            a["half_width_y"] = c.aperture.half_width_y;
            a["half_height_z"] = c.aperture.half_height_z;
            if (c.aperture.type == "double") a["center_offset_z"] = c.aperture.center_offset_z;
        }
        j["aperture"] = a;
    } else {
        j["gravity"] = {{"g", c.gravity.g},         {"slit_z", c.gravity.slit_z},
                        {"screen_z", c.gravity.screen_z}, {"half_x", c.gravity.half_x},
                        {"half_y", c.gravity.half_y}, {"verbatim_second_factor", c.gravity.verbatim_second_factor}};
    }
    return j;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

// ---------------------------------------------------------------------------
// Presets

namespace {

ScenarioConfig base_slit(const std::string& name, double x0, double x, double t, const std::string& bc_or_method,
                         double z_half_window, int n_z) {
    ScenarioConfig c;
    c.name = name;
    c.x0 = x0;
    c.x_screen = x;
    c.times = {t};
    c.grid = {-z_half_window, z_half_window, n_z, 0.0, 0.0, 1};
    if (bc_or_method == "truncation") {
        c.method = "truncation";
        c.bc_name = "free";
    } else {
        c.bc_name = bc_or_method;
    }
    c.bc = boundary_condition_from_name(c.bc_name);
    return c;
}

std::map<std::string, ScenarioConfig> build_presets() {
    std::map<std::string, ScenarioConfig> out;
    const char* kColumns[] = {"left", "middle", "right"};
    const double kTimes[] = {1.0, 0.05, 0.005};
    const char* kVariants[] = {"dirichlet", "neumann", "free", "truncation"};

    // Short-distance single slit: x0 = -1, x = 1.
    const double fig2_window[] = {5.0, 20.0, 4.0};
    // Long-distance single slit: x0 = -50, x = 50.
    const double fig3_window[] = {400.0, 50.0, 5.0};
    for (int col = 0; col < 3; ++col) {
        for (const char* v : kVariants) {
            std::string n2 = std::string("fig2-") + kColumns[col] + "-" + v;
            out[n2] = base_slit(n2, -1.0, 1.0, kTimes[col], v, fig2_window[col], 801);
            std::string n3 = std::string("fig3-") + kColumns[col] + "-" + v;
            out[n3] = base_slit(n3, -50.0, 50.0, kTimes[col], v, fig3_window[col], 1001);
        }
    }
    // Double slit at x0 = -50, x = 50 for t = 1 (left) and t = 0.05 (right).
    const char* kCols4[] = {"left", "right"};
    const double fig4_window[] = {200.0, 20.0};
    for (int col = 0; col < 2; ++col) {
        for (const char* v : {"dirichlet", "neumann", "free"}) {
            const std::string n = std::string("fig4-") + kCols4[col] + "-" + v;
            ScenarioConfig c = base_slit(n, -50.0, 50.0, kTimes[col], v, fig4_window[col], 801);
            c.aperture.type = "double";
            c.aperture.center_offset_z = 0.05;  // centres d/2 apart from the axis
            c.aperture.half_height_z = 0.01;
            c.aperture.half_width_y = 0.1;
            out[n] = c;
            // Literal reading: centres +-a = +-0.01, half-height d = 0.1 (overlapping).
            ScenarioConfig lit = c;
            lit.name = n + "-kdble";
            lit.aperture.center_offset_z = 0.01;
            lit.aperture.half_height_z = 0.1;
            out[lit.name] = lit;
        }
    }
    {
        ScenarioConfig g;
        g.name = "gravity";
        g.kind = "gravity";
        g.method = "gravity_semiclassical";
        g.bc_name = "dirichlet";
        g.bc = BoundaryCondition::dirichlet();
        g.times = {1.0};
        g.gravity = {1.0, 10.0, 20.0, 0.5, 0.5, false};
        g.grid = {-10.0, 10.0, 201, 0.0, 0.0, 1};
        out[g.name] = g;
    }
    {
        ScenarioConfig n;
        n.name = "neon";
        n.kind = "neon";
        out[n.name] = n;
    }
    return out;
}

const std::map<std::string, ScenarioConfig>& presets() {
    static const std::map<std::string, ScenarioConfig> table = build_presets();
    return table;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : presets()) names.push_back(k);
    return names;
}

ScenarioConfig preset(const std::string& name) {
    const auto it = presets().find(name);
    if (it == presets().end()) throw ValidationError("unknown preset '" + name + "'");
    return it->second;
}

// ---------------------------------------------------------------------------
// Evaluation

SlitScenario slit_scenario(const ScenarioConfig& c) {
    SlitScenario sc;
    sc.r0 = {c.x0 - c.x1, c.y0, c.z0};
    sc.aperture = c.aperture.build();
    sc.bc = c.bc;
    sc.particle = c.particle;
    return sc;
}

GravityScenario gravity_scenario(const ScenarioConfig& c, double t) {
    GravityScenario g;
    g.particle = c.particle;
    g.g = c.gravity.g;
    g.slit_z = c.gravity.slit_z;
    g.half_x = c.gravity.half_x;
    g.half_y = c.gravity.half_y;
    g.t = t;
    g.bc = c.bc;
    g.verbatim_second_factor = c.gravity.verbatim_second_factor;
    return g;
}

PatternResult compute_pattern(const ScenarioConfig& c, double t, const std::string& method, int threads) {
    if (c.kind == "slit") {
        if (!kSlitMethods.count(method)) throw ValidationError("method '" + method + "' is not valid for slit scenarios");
        ScreenGrid grid;
        grid.y_values = c.grid.y_values();
        grid.z_values = c.grid.z_values();
        grid.t = t;
        grid.x_screen = c.x_screen - c.x1;
        return evaluate_pattern(slit_scenario(c), grid, method_from_string(method), c.quadrature, threads);
    }
    if (c.kind == "gravity") {
        if (!kGravityMethods.count(method)) {
            throw ValidationError("method '" + method + "' is not valid for gravity scenarios");
        }
        return evaluate_gravity_pattern(gravity_scenario(c, t), c.gravity.screen_z, c.grid.y_values(),
                                        c.grid.z_values(), method == "gravity_semiclassical", c.quadrature, threads);
    }
    throw ValidationError("scenario kind '" + c.kind + "' has no pattern");
}

namespace {

json semiclassical_json(const SemiclassicalDiagnostics& d) {
    return {{"mu", d.mu},       {"mu_slit", d.mu_slit}, {"mu_sp", d.mu_sp},
            {"lambda0", d.lambda0}, {"tau_sc", d.tau_sc}, {"rho_path", d.rho_path}};
}

TruncationScenario truncation_of(const ScenarioConfig& c, double t) {
    TruncationScenario sc;
    sc.x0 = c.x0;
    sc.x1 = c.x1;
    sc.x = c.x_screen;
    sc.y0 = c.y0;
    sc.z0 = c.z0;
    sc.t = t;
    sc.particle = c.particle;
    sc.bc = c.bc;
    sc.slits.clear();
    const Aperture ap = c.aperture.build();
    if (const auto* r = std::get_if<RectAperture>(&ap)) {
        sc.slits.push_back({r->center_z, r->center_y, r->half_height_z, r->half_width_y});
    } else if (const auto* d = std::get_if<DoubleSlitAperture>(&ap)) {
        for (const auto& r : d->rects()) sc.slits.push_back({r.center_z, r.center_y, r.half_height_z, r.half_width_y});
    }
    return sc;
}

}  // namespace

json diagnostics_json(const ScenarioConfig& c, double t) {
    json j;
    if (c.kind == "neon") {
        const NeonDiagnostics d = neon_scenario_diagnostics(c.neon.l1, c.neon.l2, c.neon.g);
        j["neon"] = {{"mass", d.mass}, {"hbar", d.hbar},         {"g", d.g},
                     {"l1", d.l1},     {"l2", d.l2},             {"t1", d.t1},
                     {"velocity", d.velocity}, {"lambda", d.lambda}, {"lambda_reduced", d.lambda_reduced},
                     {"mu", d.mu},     {"mu_path", d.mu_path}};
        return j;
    }
    if (c.kind == "gravity") {
        const GravityScenario g = gravity_scenario(c, t);
        const Vec3 r{0.0, 0.0, c.gravity.screen_z};
        const Vec3 r1{0.0, 0.0, c.gravity.slit_z};
        const GravityRoots roots = tau_sc_gravity(r, r1, t, g.g);
        j["gravity"] = {{"tau_sc", roots.tau},
                        {"all_roots", roots.all_roots},
                        {"omega_sc", omega_sc_gravity(r, r1, t, roots.tau, g.g, g.particle)},
                        {"phi_sc", phi_sc_gravity(r, r1, t, roots.tau, g.g, g.particle)},
                        {"mu", g.particle.mass * norm2(r) / (2.0 * g.particle.hbar * t)},
                        {"calibration_factor", complex_json(gravity_calibration_factor(g.particle))},
                        {"energy_residual", gravity_energy_residual(r, r1, t, roots.tau, g.g)}};
        return j;
    }
    PointSourceGeometry geo;
    geo.r0 = {c.x0 - c.x1, c.y0, c.z0};
    geo.r1 = {0.0, 0.0, 0.0};
    geo.r = {c.x_screen - c.x1, 0.0, 0.0};
    geo.t = t;
    geo.bc = c.bc;
    geo.particle = c.particle;
    j["semiclassical_on_axis"] = semiclassical_json(diagnostics(geo));
    if (c.aperture.type != "ellipse") {
        const double zw = std::max(std::fabs(c.grid.z_min), std::fabs(c.grid.z_max));
        const RegimeReport r = regime_report(truncation_of(c, t), zw);
        j["regime"] = {{"t_c", r.t_c},
                       {"lambda0", r.lambda0},
                       {"lambda", r.lambda},
                       {"L", r.L},
                       {"N_F_a", r.N_F_a},
                       {"N_F_b", r.N_F_b},
                       {"gamma", r.gamma},
                       {"gamma_prime", r.gamma_prime},
                       {"kappa", r.kappa},
                       {"rho_zoom_inv", r.rho_zoom_inv},
                       {"q", r.q},
                       {"mu", r.mu},
                       {"fringe_spacing", r.fringe_spacing},
                       {"delta_window", r.delta_window},
                       {"regime", to_string(r.regime)}};
    }
    return j;
}

void write_pattern_csv(std::ostream& os, const std::vector<double>& y, const std::vector<double>& z,
                       const PatternResult& r) {
    os << "y,z,re_amplitude,im_amplitude,intensity,probability_density\n";
    os << std::setprecision(17);
    for (std::size_t iy = 0; iy < r.ny; ++iy) {
        for (std::size_t iz = 0; iz < r.nz; ++iz) {
            const std::size_t k = r.index(iy, iz);
            os << y[iy] << ',' << z[iz] << ',' << r.amplitudes[k].real() << ',' << r.amplitudes[k].imag() << ','
               << r.intensities[k] << ',' << r.probability_density[k] << '\n';
        }
    }
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv(kThreadsEnv)) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 4096) return int(v);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

std::filesystem::path prepare_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw IoError("cannot create output directory '" + out_dir + "'");
    }
    return std::filesystem::path(out_dir);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw IoError("cannot write '" + p.string() + "'");
    out << text;
    out.close();
    if (!out) throw IoError("failed while writing '" + p.string() + "'");
}

std::string file_stem(const ScenarioConfig& c, std::size_t k) {
    return c.times.size() == 1 ? c.name : c.name + "_t" + std::to_string(k);
}

json pattern_json(const PatternResult& r) {
    json corners = json::array();
    for (const auto& d : r.corner_diagnostics) corners.push_back(semiclassical_json(d));
    return {{"method", to_string(r.method)},
            {"aperture", r.aperture},
            {"omega", r.omega},
            {"captured_fraction", r.captured_fraction},
            {"unconverged_points", r.unconverged_count()},
            {"warnings", r.warnings},
            {"corner_diagnostics", corners}};
}

// Wraps a command body with the error-to-exit-code mapping.
template <class Body>
int guarded(std::ostream& log, Body&& body) {
    try {
        return body();
    } catch (const IoError& e) {
        log << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ConvergenceError& e) {
        log << "convergence error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const Error& e) {
        log << "validation error: " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace

int run_command(const ScenarioConfig& cfg, const std::string& out_dir, const std::string& method_override,
                int threads, std::ostream& log) {
    return guarded(log, [&]() {
        ScenarioConfig c = cfg;
        if (!method_override.empty()) c.method = method_override;
        c.validate();
        const auto dir = prepare_dir(out_dir);
        json sidecar;
        sidecar["config"] = config_to_json(c);
        bool partial = false;
        if (c.kind == "neon") {
            sidecar["diagnostics"] = diagnostics_json(c, 0.0);
        } else {
            sidecar["runs"] = json::array();
            for (std::size_t k = 0; k < c.times.size(); ++k) {
                const double t = c.times[k];
                log << "computing " << c.name << " (" << c.method << ", t=" << t << ")\n";
                const PatternResult r = compute_pattern(c, t, c.method, threads);
                std::ostringstream csv;
                write_pattern_csv(csv, c.grid.y_values(), c.grid.z_values(), r);
                const std::string csv_name = file_stem(c, k) + ".csv";
                write_text(dir / csv_name, csv.str());
                json run = pattern_json(r);
                run["t"] = t;
                run["csv"] = csv_name;
                run["diagnostics"] = diagnostics_json(c, t);
                sidecar["runs"].push_back(run);
                partial = partial || r.unconverged_count() > 0;
            }
        }
        write_text(dir / (c.name + ".json"), sidecar.dump(2) + "\n");
        if (partial) {
            log << "some grid points did not converge; results are flagged in the JSON sidecar\n";
            return kExitConvergence;
        }
        return kExitOk;
    });
}

int compare_command(const ScenarioConfig& cfg, const std::vector<std::string>& methods, const std::string& out_dir,
                    int threads, std::ostream& log) {
    return guarded(log, [&]() {
        const std::set<std::string> distinct(methods.begin(), methods.end());
        if (methods.size() < 2 || distinct.size() != methods.size()) {
            throw ValidationError("compare needs at least two distinct methods");
        }
        cfg.validate();
        if (cfg.kind == "neon") throw ValidationError("the neon scenario has no pattern to compare");
        for (const auto& m : methods) {
            ScenarioConfig probe = cfg;
            probe.method = m;
            probe.validate();
        }
        std::string reference = methods.back();
        for (const char* pref : {"gravity", "exact", "truncation"}) {
            if (distinct.count(pref)) reference = pref;
        }
        const auto dir = prepare_dir(out_dir);
        const auto ys = cfg.grid.y_values();
        const auto zs = cfg.grid.z_values();
        std::size_t row = 0;
        for (std::size_t iy = 1; iy < ys.size(); ++iy) {
            if (std::fabs(ys[iy]) < std::fabs(ys[row])) row = iy;
        }

        json report;
        report["config"] = config_to_json(cfg);
        report["reference"] = reference;
        report["methods"] = methods;
        report["runs"] = json::array();
        bool partial = false;
        for (std::size_t k = 0; k < cfg.times.size(); ++k) {
            const double t = cfg.times[k];
            std::map<std::string, PatternResult> res;
            for (const auto& m : methods) {
                log << "computing " << cfg.name << " (" << m << ", t=" << t << ")\n";
                res.emplace(m, compute_pattern(cfg, t, m, threads));
                partial = partial || res.at(m).unconverged_count() > 0;
            }
            std::ostringstream csv;
            csv << "y,z";
            for (const auto& m : methods) csv << ",intensity_" << m;
            csv << '\n' << std::setprecision(17);
            const PatternResult& ref = res.at(reference);
            for (std::size_t iy = 0; iy < ref.ny; ++iy) {
                for (std::size_t iz = 0; iz < ref.nz; ++iz) {
                    csv << ys[iy] << ',' << zs[iz];
                    for (const auto& m : methods) csv << ',' << res.at(m).intensities[ref.index(iy, iz)];
                    csv << '\n';
                }
            }
            const std::string csv_name = "compare_" + file_stem(cfg, k) + ".csv";
            write_text(dir / csv_name, csv.str());

            // Fringe analysis on the positive half of the z profile nearest y = 0.
            auto profile = [&](const PatternResult& r) {
                std::vector<double> z, v;
                for (std::size_t iz = 0; iz < r.nz; ++iz) {
                    if (zs[iz] >= 0.0) {
                        z.push_back(zs[iz]);
                        v.push_back(r.intensities[r.index(row, iz)]);
                    }
                }
                return std::make_pair(z, v);
            };
            double ref_peak = 0.0;
            for (const auto& a : ref.amplitudes) ref_peak = std::max(ref_peak, std::abs(a));
            json run;
            run["t"] = t;
            run["csv"] = csv_name;
            run["diagnostics"] = diagnostics_json(cfg, t);
            run["comparisons"] = json::array();
            for (const auto& m : methods) {
                if (m == reference) continue;
                const PatternResult& test = res.at(m);
                json cmp;
                cmp["method"] = m;
                double gap = 0.0;
                for (std::size_t i = 0; i < test.amplitudes.size(); ++i) {
                    gap = std::max(gap, std::abs(test.amplitudes[i] - ref.amplitudes[i]));
                }
                // Largest amplitude difference relative to the reference peak amplitude.
                cmp["max_relative_amplitude_gap"] = ref_peak > 0.0 ? gap / ref_peak : 0.0;
                try {
                    const auto [zt, vt] = profile(test);
                    const auto [zr, vr] = profile(ref);
                    const FringeSet ref_set = find_minima(zr, vr);
                    const ShiftReport sr = compare_fringes(find_minima(zt, vt), ref_set);
                    cmp["fringes"] = {{"test_minima", sr.test.minima_z},
                                      {"reference_minima", ref_set.minima_z},
                                      {"spacing_shifts", sr.spacing_shifts},
                                      {"position_shifts", sr.position_shifts},
                                      {"warnings", sr.warnings}};
                } catch (const Error& e) {
                    cmp["fringes"] = {{"error", e.what()}};
                }
                run["comparisons"].push_back(cmp);
            }
            report["runs"].push_back(run);
        }
        write_text(dir / ("compare_" + cfg.name + ".json"), report.dump(2) + "\n");
        if (partial) {
            log << "some grid points did not converge; see the report\n";
            return kExitConvergence;
        }
        return kExitOk;
    });
}

}  // namespace qslit::cli
