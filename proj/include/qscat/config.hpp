#ifndef QSCAT_CONFIG_HPP
#define QSCAT_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "qscat/functionals.hpp"
#include "qscat/model.hpp"
#include "qscat/spectral.hpp"

namespace qscat {

/// Scenario description parsed from JSON. Defaults correspond to the
/// standard desk-scale run (n=200, omega_max=20, kappa=0.25).
struct ScenarioConfig {
    // model
    int n = 200;
    double omega_max = 20.0;
    double kappa = 0.25;
    std::string form_factor = "sqrt_cauchy";
    double form_factor_scale = 1.0;
    SearchRect rect = ScatteringModel::default_rect();

    // state: preset packet or inline samples
    std::string state_preset = "threshold_packet";
    double packet_center = 2.0;
    double packet_width = 1.0;
    std::optional<std::vector<double>> state_inline_d;   // plus optional kernel
    std::optional<std::vector<std::vector<double>>> state_inline_k_re, state_inline_k_im;

    // observables: preset names (inline tables accepted for run/evolve only)
    std::vector<std::string> observables = {"number_band", "band_high", "kernel_smooth",
                                            "kernel_threshold", "mixed_band_kernel"};

    std::vector<double> times = {0.0, 1.0, 2.0, 5.0, 10.0};
    std::vector<std::string> runs = {"evolve", "final", "irreversibility"};

    // deformation path
    double path_ray_depth = 1.8;
    double path_strip_depth = 0.5;
    int path_points = 160;

    unsigned seed = 20250809;
    std::string out_dir = ".";
};

ScenarioConfig load_config(const std::string& path);
std::string resolved_config_json(const ScenarioConfig& cfg);

/// Exit codes of the command-line driver.
enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_numeric_error = 3,
    exit_analyticity_error = 4,
};

int run_scenario(const ScenarioConfig& cfg);
int verify_scenario(const ScenarioConfig& cfg);

} // namespace qscat

#endif
