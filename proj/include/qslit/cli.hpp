#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qslit/aperture.hpp"
#include "qslit/gravity.hpp"

namespace qslit::cli {

inline constexpr int kSchemaVersion = 1;

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitIo = 4;

// Environment variable holding the default worker count.
inline constexpr const char* kThreadsEnv = "QSLIT_THREADS";

struct GridConfig {
    double z_min = 0.0, z_max = 0.0;
    int n_z = 1;
    double y_min = 0.0, y_max = 0.0;
    int n_y = 1;

    std::vector<double> z_values() const;
    std::vector<double> y_values() const;
};

struct ApertureConfig {
    // "rect", "double" or "ellipse" (a mask).
    std::string type = "rect";
    double half_width_y = 0.1;
    double half_height_z = 0.01;
    double center_y = 0.0;
    double center_z = 0.0;
    double center_offset_z = 0.05;  // double
    double semi_y = 0.1;            // ellipse
    double semi_z = 0.01;           // ellipse

    Aperture build() const;
};

struct GravityConfig {
    double g = 0.0;
    double slit_z = 1.0;
    double screen_z = 2.0;
    double half_x = 0.01;
    double half_y = 0.1;
    bool verbatim_second_factor = false;
};

struct NeonConfig {
    double l1 = 0.1;
    double l2 = 0.0;
    double g = 9.81;
};

// kind "slit": flat-space slit scenarios (methods exact, semiclassical,
// truncation, fourth_order). kind "gravity": methods gravity and
// gravity_semiclassical; grid z holds the in-plane x coordinate.
// kind "neon": diagnostics only.
struct ScenarioConfig {
    int schema_version = kSchemaVersion;
    std::string name = "scenario";
    std::string kind = "slit";
    Particle particle{};
    double x0 = -1.0, y0 = 0.0, z0 = 0.0;
    double x1 = 0.0;
    double x_screen = 1.0;
    ApertureConfig aperture{};
    std::string bc_name = "free";  // "custom" when given as (lambda1, lambda2)
    BoundaryCondition bc = BoundaryCondition::free();
    std::vector<double> times{1.0};
    GridConfig grid{};
    std::string method = "exact";
    QuadratureSpec quadrature = default_aperture_spec();
    GravityConfig gravity{};
    NeonConfig neon{};

    // Throws ValidationError describing the first problem found.
    void validate() const;
};

ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& c);
// Throws IoError when the file cannot be read or parsed as JSON.
ScenarioConfig load_config(const std::string& path);

std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);

BoundaryCondition boundary_condition_from_name(const std::string& name);

// Slit scenario in the library's frame (slit plane at x = 0).
SlitScenario slit_scenario(const ScenarioConfig& c);
GravityScenario gravity_scenario(const ScenarioConfig& c, double t);

// Diagnostics written to the JSON sidecar for one time value.
nlohmann::json diagnostics_json(const ScenarioConfig& c, double t);

// CSV with header y,z,re_amplitude,im_amplitude,intensity,probability_density.
void write_pattern_csv(std::ostream& os, const std::vector<double>& y, const std::vector<double>& z,
                       const PatternResult& r);

struct IoError : Error {
    using Error::Error;
};

// Pattern for one time and method.
PatternResult compute_pattern(const ScenarioConfig& c, double t, const std::string& method, int threads);

// Commands; return the process exit code. Progress and errors go to `log`.
int run_command(const ScenarioConfig& c, const std::string& out_dir, const std::string& method_override,
                int threads, std::ostream& log);
int compare_command(const ScenarioConfig& c, const std::vector<std::string>& methods, const std::string& out_dir,
                    int threads, std::ostream& log);

// Thread count from the flag (> 0 wins), else the environment, else 0 (auto).
int resolve_threads(int flag_value);

}  // namespace qslit::cli
