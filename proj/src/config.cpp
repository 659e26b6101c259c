#include "qscat/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qscat/errors.hpp"
#include "qscat/evolution.hpp"
#include "qscat/oracle.hpp"
#include "qscat/scattering.hpp"
#include "qscat/superoperators.hpp"

namespace qscat {

using nlohmann::json;

namespace {

StateFunctional build_state(const EnergyGrid& grid, const ScenarioConfig& cfg) {
    if (cfg.state_inline_d) {
        StateFunctional rho;
        const int n = grid.size();
        if (static_cast<int>(cfg.state_inline_d->size()) != n)
            throw config_error("inline state: diagonal sample count != n");
        rho.d = Eigen::Map<const Eigen::VectorXd>(cfg.state_inline_d->data(), n);
        rho.k = Eigen::MatrixXcd::Zero(n, n);
        if (cfg.state_inline_k_re) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    rho.k(i, j) = cplx((*cfg.state_inline_k_re)[i][j],
                                       cfg.state_inline_k_im ? (*cfg.state_inline_k_im)[i][j] : 0.0);
        }
        double tr = grid.integrate(rho.d);
        if (tr <= 0.0) throw config_error("inline state: nonpositive trace");
        rho.d /= tr;
        rho.k /= tr;
        validate(grid, rho);
        return rho;
    }
    return from_packet(grid, wave_packet_preset(cfg.state_preset, cfg.packet_center,
                                                cfg.packet_width));
}

std::ofstream open_out(const ScenarioConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream f(std::filesystem::path(cfg.out_dir) / name);
    if (!f) throw config_error("cannot open output file " + name);
    f << std::setprecision(15);
    return f;
}

struct Check {
    std::string name;
    double residual;
    double tolerance;
    bool informational = false;
};

void write_checks(const ScenarioConfig& cfg, const std::vector<Check>& checks) {
    auto f = open_out(cfg, "verify.csv");
    f << "check_name,residual,tolerance,pass\n";
    for (const auto& c : checks)
        f << c.name << "," << c.residual << "," << c.tolerance << ","
          << ((c.residual <= c.tolerance || c.informational) ? "true" : "false") << "\n";
}

} // namespace

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot read config file " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw config_error(std::string("malformed JSON: ") + e.what());
    }
    ScenarioConfig cfg;
    try {
        if (j.contains("model")) {
            const auto& m = j["model"];
            cfg.n = m.value("n", cfg.n);
            cfg.omega_max = m.value("omega_max", cfg.omega_max);
            cfg.kappa = m.value("coupling", cfg.kappa);
            cfg.form_factor = m.value("form_factor", cfg.form_factor);
            cfg.form_factor_scale = m.value("form_factor_scale", cfg.form_factor_scale);
            if (m.contains("search_rect")) {
                const auto& r = m["search_rect"];
                cfg.rect = {r.at("re_lo"), r.at("re_hi"), r.at("im_lo"), r.at("im_hi")};
            }
        }
        if (j.contains("state")) {
            const auto& s = j["state"];
            cfg.state_preset = s.value("preset", cfg.state_preset);
            cfg.packet_center = s.value("center", cfg.packet_center);
            cfg.packet_width = s.value("width", cfg.packet_width);
            if (s.contains("inline_d")) {
                cfg.state_inline_d = s["inline_d"].get<std::vector<double>>();
                if (s.contains("inline_k_re"))
                    cfg.state_inline_k_re =
                        s["inline_k_re"].get<std::vector<std::vector<double>>>();
                if (s.contains("inline_k_im"))
                    cfg.state_inline_k_im =
                        s["inline_k_im"].get<std::vector<std::vector<double>>>();
            }
        }
        if (j.contains("observables"))
            cfg.observables = j["observables"].get<std::vector<std::string>>();
        if (j.contains("times")) cfg.times = j["times"].get<std::vector<double>>();
        if (j.contains("runs")) cfg.runs = j["runs"].get<std::vector<std::string>>();
        if (j.contains("path")) {
            const auto& p = j["path"];
            cfg.path_ray_depth = p.value("ray_depth", cfg.path_ray_depth);
            cfg.path_strip_depth = p.value("strip_depth", cfg.path_strip_depth);
            cfg.path_points = p.value("points_per_segment", cfg.path_points);
        }
        cfg.seed = j.value("seed", cfg.seed);
        cfg.out_dir = j.value("out_dir", cfg.out_dir);
    } catch (const json::exception& e) {
        throw config_error(std::string("config schema: ") + e.what());
    }

    if (cfg.n < 2) throw config_error("model.n must be >= 2");
    if (cfg.kappa < 0.0) throw config_error("model.coupling must be >= 0");
    if (!std::is_sorted(cfg.times.begin(), cfg.times.end()))
        throw config_error("times must be sorted ascending");
    double tmax = std::numbers::pi * cfg.n / (2.0 * cfg.omega_max);
    for (double t : cfg.times)
        if (t > tmax)
            throw config_error("time " + std::to_string(t) + " exceeds T_max=" +
                               std::to_string(tmax) + " for n=" + std::to_string(cfg.n));
    return cfg;
}

std::string resolved_config_json(const ScenarioConfig& cfg) {
    json j;
    j["model"] = {{"n", cfg.n},
                  {"omega_max", cfg.omega_max},
                  {"coupling", cfg.kappa},
                  {"form_factor", cfg.form_factor},
                  {"form_factor_scale", cfg.form_factor_scale},
                  {"search_rect",
                   {{"re_lo", cfg.rect.re_lo},
                    {"re_hi", cfg.rect.re_hi},
                    {"im_lo", cfg.rect.im_lo},
                    {"im_hi", cfg.rect.im_hi}}}};
    j["state"] = {{"preset", cfg.state_preset},
                  {"center", cfg.packet_center},
                  {"width", cfg.packet_width}};
    if (cfg.state_inline_d) j["state"]["inline_d"] = *cfg.state_inline_d;
    if (cfg.state_inline_k_re) j["state"]["inline_k_re"] = *cfg.state_inline_k_re;
    if (cfg.state_inline_k_im) j["state"]["inline_k_im"] = *cfg.state_inline_k_im;
    j["observables"] = cfg.observables;
    j["times"] = cfg.times;
    j["runs"] = cfg.runs;
    j["path"] = {{"ray_depth", cfg.path_ray_depth},
                 {"strip_depth", cfg.path_strip_depth},
                 {"points_per_segment", cfg.path_points}};
    j["seed"] = cfg.seed;
    j["out_dir"] = cfg.out_dir;
    return j.dump(2);
}

int run_scenario(const ScenarioConfig& cfg) {
    EnergyGrid grid(cfg.n, cfg.omega_max);
    ScatteringModel model(grid, cfg.kappa,
                          form_factor_preset(cfg.form_factor, cfg.form_factor_scale));
    StateFunctional rho0 = build_state(grid, cfg);
    PlusRepresentation rep = to_plus_representation(model, rho0);

    std::vector<ObservableKernel> probes;
    for (const auto& name : cfg.observables)
        probes.push_back(make_observable(grid, observable_preset(name)));

    {
        auto f = open_out(cfg, "resolved_config.json");
        f << resolved_config_json(cfg) << "\n";
    }

    for (const auto& run : cfg.runs) {
        if (run == "evolve") {
            auto f = open_out(cfg, "evolve.csv");
            f << "t,observable,re_mean,im_mean,trace,energy,offdiag_mag\n";
            for (size_t p = 0; p < probes.size(); ++p) {
                Eigen::MatrixXcd M = plus_fluc_kernel(model, probes[p]);
                for (double t : cfg.times) {
                    EvolutionResult r = evolve_result(model, rep, probes[p], M, t);
                    f << t << "," << cfg.observables[p] << "," << r.mean.real() << ","
                      << r.mean.imag() << "," << r.trace << "," << r.energy << ","
                      << r.offdiag_mag << "\n";
                }
            }
        } else if (run == "final") {
            StateFunctional rinf = final_state(model, rho0);
            auto f = open_out(cfg, "final.csv");
            f << "omega,d_inf\n";
            for (int i = 0; i < grid.size(); ++i)
                f << grid.node(i) << "," << rinf.d[i] << "\n";
        } else if (run == "irreversibility") {
            auto report = irreversibility_suite(model, rho0, probes, cfg.times);
            auto f = open_out(cfg, "irreversibility.csv");
            f << "check,value\n";
            f << "stationarity_final," << report.stationarity_final << "\n";
            f << "stationarity_reversed," << report.stationarity_reversed << "\n";
            f << "recovery_margin," << report.recovery_margin << "\n";
            f << "purity_violation," << report.purity_violation << "\n";
            f << "final_is_mixed," << (report.final_is_mixed ? 1 : 0) << "\n";
        } else if (run == "real-spectral") {
            std::vector<int> dn = {grid.size() / 4, grid.size() / 2};
            std::vector<std::pair<int, int>> pairs = {{grid.size() / 8, grid.size() / 3},
                                                      {grid.size() / 3, 2 * grid.size() / 3}};
            auto rows = phi_energy_trace(model, dn, pairs);
            auto f = open_out(cfg, "real_spectral.csv");
            f << "name,value,expected,residual\n";
            for (const auto& r : rows)
                f << r.name << "," << r.value << "," << r.expected << "," << r.residual << "\n";
        } else if (run == "complex-spectral") {
            DeformationPath path = DeformationPath::build(grid, cfg.path_ray_depth,
                                                          cfg.path_strip_depth, cfg.path_points);
            ComplexSpectralFamily fam = cfg.kappa == 0.0 ? free_complex_family(grid)
                                                         : gamov_vectors(model, path);
            auto f = open_out(cfg, "complex_spectral.csv");
            f << "t,observable,term,re,im\n";
            for (size_t p = 0; p < probes.size(); ++p) {
                ComplexEvolutionPlan plan(model, fam, rho0, probes[p]);
                for (double t : cfg.times) {
                    if (t <= 0.0) continue;
                    ComplexEvolutionTerms terms = plan.evaluate(t);
                    auto row = [&](const std::string& nm, cplx v) {
                        f << t << "," << cfg.observables[p] << "," << nm << "," << v.real()
                          << "," << v.imag() << "\n";
                    };
                    row("invariant", terms.invariant);
                    row("gamov", terms.gamov);
                    row("mixed_upper", terms.mixed_upper);
                    row("mixed_lower", terms.mixed_lower);
                    row("background", terms.background);
                    row("total", terms.total());
                }
            }
        } else if (run == "verify") {
            int rc = verify_scenario(cfg);
            if (rc != exit_ok) return rc;
        } else {
            throw config_error("unknown run kind: " + run);
        }
    }
    return exit_ok;
}

int verify_scenario(const ScenarioConfig& cfg) {
    std::vector<Check> checks;
    std::mt19937 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // finite resolvent-partition identities on random Hermitian instances
    for (int inst = 0; inst < 20; ++inst) {
        int n = 2 + static_cast<int>(rng() % 7);
        Eigen::MatrixXcd H(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) H(i, j) = cplx(gauss(rng), gauss(rng));
        H = 0.5 * (H + H.adjoint()).eval();
        FiniteLiouvillian L(H);
        ProjectorPair pr = ProjectorPair::diagonal(n);
        cplx z(gauss(rng), 1.0 + std::abs(gauss(rng)));
        double res = verify_resolvent_partition(L, pr, z);
        checks.push_back({"resolvent_partition_" + std::to_string(inst), res, 1e-9});
    }

    // grid-level model checks
    EnergyGrid grid(cfg.n, cfg.omega_max);
    ScatteringModel model(grid, cfg.kappa,
                          form_factor_preset(cfg.form_factor, cfg.form_factor_scale));
    double uni = 0.0;
    for (int i = 0; i < grid.size(); ++i)
        uni = std::max(uni, std::abs(std::abs(model.s_matrix(grid.node(i))) - 1.0));
    checks.push_back({"s_matrix_unimodular", uni, 1e-10});

    if (cfg.kappa > 0.0) {
        const PoleInfo& p = const_cast<ScatteringModel&>(model).find_pole(cfg.rect);
        checks.push_back({"pole_residual", std::abs(model.eta_second_sheet(p.z0)), 1e-10});
        checks.push_back({"pole_count", std::abs(double(p.rect_count) - 1.0), 0.5});
    } else {
        checks.push_back({"no_resonance", 0.0, 1.0, true});
    }

    // diagonal commutator vanishing and its refinement scaling
    {
        DiscretizedSystem sys(model);
        Eigen::MatrixXcd D = Eigen::VectorXd::Random(grid.size()).cast<cplx>().asDiagonal();
        Eigen::MatrixXcd C = sys.hamiltonian() * D - D * sys.hamiltonian();
        checks.push_back({"diag_commutator_zero", C.diagonal().cwiseAbs().maxCoeff(), 1e-14});
    }

    // oracle round trip on a random valid state
    {
        const int n = grid.size();
        Eigen::VectorXcd phi(n);
        for (int i = 0; i < n; ++i) phi[i] = cplx(gauss(rng), gauss(rng));
        StateFunctional rho = from_wavefunction(grid, phi);
        ObservableKernel O = make_observable(grid, observable_preset("mixed_band_kernel"));
        DiscretizedSystem sys(model);
        cplx lhs = pair(grid, rho, O);
        cplx rhs = sys.mean(sys.pure_state_matrix(phi), O);
        checks.push_back({"oracle_round_trip", std::abs(lhs - rhs), 1e-10});
    }

    write_checks(cfg, checks);
    for (const auto& c : checks)
        if (!c.informational && c.residual > c.tolerance) return exit_numeric_error;
    return exit_ok;
}

} // namespace qscat
