#include "qscat/evolution.hpp"

#include <cmath>

#include "qscat/errors.hpp"

namespace qscat {

namespace {

Eigen::MatrixXcd phase_matrix(const EnergyGrid& grid, double t) {
    const int n = grid.size();
    Eigen::VectorXcd e(n);
    for (int i = 0; i < n; ++i) e[i] = std::polar(1.0, grid.node(i) * t);
    return e * e.conjugate().transpose();
}

cplx offdiag_term(const EnergyGrid& grid, const PlusRepresentation& rep,
                  const Eigen::MatrixXcd& mfluc, double t) {
    const Eigen::VectorXd& w = grid.weights();
    Eigen::MatrixXcd ph = phase_matrix(grid, t);
    return (w * w.transpose()).cast<cplx>()
        .cwiseProduct(ph)
        .cwiseProduct(rep.c)
        .cwiseProduct(mfluc)
        .sum();
}

void check_time(const EnergyGrid& grid, double t) {
    if (t < 0.0) throw config_error("evolve_mean: negative time");
    if (t > grid.t_max())
        throw config_error("evolve_mean: t=" + std::to_string(t) +
                           " exceeds the resolvable T_max=" + std::to_string(grid.t_max()));
}

} // namespace

cplx evolve_mean(const ScatteringModel& model, const PlusRepresentation& rep,
                 const ObservableKernel& obs, const Eigen::MatrixXcd& mfluc, double t) {
    const EnergyGrid& grid = model.grid();
    check_time(grid, t);
    cplx inv = grid.integrate(Eigen::VectorXd(rep.c_diag.cwiseProduct(obs.diag)));
    return inv + offdiag_term(grid, rep, mfluc, t);
}

cplx evolve_mean(const ScatteringModel& model, const PlusRepresentation& rep,
                 const ObservableKernel& obs, double t) {
    return evolve_mean(model, rep, obs, plus_fluc_kernel(model, obs), t);
}

EvolutionResult evolve_result(const ScatteringModel& model, const PlusRepresentation& rep,
                              const ObservableKernel& obs, const Eigen::MatrixXcd& mfluc,
                              double t) {
    const EnergyGrid& grid = model.grid();
    EvolutionResult r;
    r.t = t;
    r.mean = evolve_mean(model, rep, obs, mfluc, t);
    r.trace = grid.integrate(rep.c_diag);
    ObservableKernel H = hamiltonian_observable(model);
    // energy through the same route; H_fluc vanishes identically, so the
    // invariant term carries it all
    r.energy = grid.integrate(Eigen::VectorXd(rep.c_diag.cwiseProduct(H.diag))).real()
               + offdiag_term(grid, rep, plus_fluc_kernel(model, H), t).real();
    r.offdiag_mag = std::abs(offdiag_term(grid, rep, mfluc, t));
    return r;
}

ObservableKernel hamiltonian_observable(const ScatteringModel& model) {
    const EnergyGrid& grid = model.grid();
    ObservableKernel H;
    H.diag = grid.nodes();
    H.reg = model.kappa() *
            (model.g_samples() * model.g_samples().transpose()).cast<cplx>();
    ObservableSpec spec;
    spec.name = "hamiltonian";
    auto g2c = model.form_factor().g2_cont;
    auto gc = model.form_factor().g_cont;
    double kap = model.kappa();
    spec.diag = [](double w) { return w; };
    spec.diag_cont = [](cplx z) { return z; };
    spec.reg = [gc, kap](double w, double wp) {
        return kap * gc(cplx(w)) * gc(cplx(wp));
    };
    spec.reg_cont = [gc, kap](cplx z, cplx zp) { return kap * gc(z) * gc(zp); };
    spec.poles = model.form_factor().poles;
    H.spec = spec;
    return H;
}

StateFunctional final_state(const ScatteringModel& model, const StateFunctional& rho0) {
    PlusRepresentation rep = to_plus_representation(model, rho0);
    StateFunctional out;
    out.d = rep.c_diag;
    out.k = Eigen::MatrixXcd::Zero(rep.c.rows(), rep.c.cols());
    return out;
}

IrreversibilityReport irreversibility_suite(const ScatteringModel& model,
                                            const StateFunctional& rho0,
                                            const std::vector<ObservableKernel>& probes,
                                            const std::vector<double>& times) {
    const EnergyGrid& grid = model.grid();
    IrreversibilityReport rep;

    StateFunctional rinf = final_state(model, rho0);
    StateFunctional rinf_T = time_invert(rinf);
    StateFunctional rho0_T = time_invert(rho0);

    PlusRepresentation pinf = to_plus_representation(model, rinf);
    PlusRepresentation pinf_T = to_plus_representation(model, rinf_T);

    for (const auto& O : probes) {
        Eigen::MatrixXcd M = plus_fluc_kernel(model, O);
        cplx p1 = pair(grid, rinf, O);
        cplx p2 = pair(grid, rinf_T, O);
        cplx pT0 = pair(grid, rho0_T, O);
        for (double t : times) {
            rep.stationarity_final =
                std::max(rep.stationarity_final, std::abs(evolve_mean(model, pinf, O, M, t) - p1));
            rep.stationarity_reversed = std::max(
                rep.stationarity_reversed, std::abs(evolve_mean(model, pinf_T, O, M, t) - p2));
            // T rho_inf is stationary, so its evolution stays at p2
            rep.recovery_margin = std::max(rep.recovery_margin, std::abs(p2 - pT0));
        }
    }
    rep.purity_violation = (rinf.k.diagonal().real() - rinf.d).cwiseAbs().maxCoeff();
    rep.final_is_mixed = rep.purity_violation > 1e-10 && rinf.d.maxCoeff() > 0.0;
    if (rep.recovery_margin <= 0.0)
        rep.notes.push_back("degenerate case: time-inverted final state equals the "
                            "time-inverted initial state (diagonal input)");
    return rep;
}

} // namespace qscat
