#include "qscat/functionals.hpp"

#include <cmath>

#include "qscat/errors.hpp"

namespace qscat {

ObservableKernel make_observable(const EnergyGrid& grid, const ObservableSpec& spec) {
    const int n = grid.size();
    ObservableKernel obs;
    obs.diag.setZero(n);
    obs.reg.setZero(n, n);
    if (spec.diag)
        for (int i = 0; i < n; ++i) obs.diag[i] = spec.diag(grid.node(i));
    if (spec.reg)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) obs.reg(i, j) = spec.reg(grid.node(i), grid.node(j));
    obs.spec = spec;
    return obs;
}

void validate(const EnergyGrid& grid, const ObservableKernel& obs) {
    const int n = grid.size();
    if (obs.diag.size() != n || obs.reg.rows() != n || obs.reg.cols() != n)
        throw numeric_error("observable: sample arrays do not match the grid");
    double herm = (obs.reg - obs.reg.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12 * std::max(1.0, obs.reg.cwiseAbs().maxCoeff()))
        throw numeric_error("observable: kernel not Hermitian, deviation " + std::to_string(herm));
}

void validate(const EnergyGrid& grid, const StateFunctional& rho) {
    const int n = grid.size();
    if (rho.d.size() != n || rho.k.rows() != n || rho.k.cols() != n)
        throw numeric_error("state: sample arrays do not match the grid");
    if (rho.d.minCoeff() < -1e-12)
        throw numeric_error("state: negative diagonal density");
    double tr = grid.integrate(rho.d);
    if (std::abs(tr - 1.0) > 1e-10)
        throw numeric_error("state: trace deviates from 1 by " + std::to_string(tr - 1.0));
    double herm = (rho.k - rho.k.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12 * std::max(1.0, rho.k.cwiseAbs().maxCoeff()))
        throw numeric_error("state: kernel not Hermitian, deviation " + std::to_string(herm));
}

cplx pair(const EnergyGrid& grid, const StateFunctional& rho, const ObservableKernel& obs) {
    const int n = grid.size();
    if (rho.d.size() != n || obs.diag.size() != n)
        throw numeric_error("pair: grid mismatch");
    const Eigen::VectorXd& w = grid.weights();
    cplx acc = w.cwiseProduct(rho.d.cwiseProduct(obs.diag)).sum();
    acc += (w * w.transpose()).cast<cplx>()
               .cwiseProduct(rho.k.conjugate())
               .cwiseProduct(obs.reg)
               .sum();
    return acc;
}

StateFunctional from_wavefunction(const EnergyGrid& grid, const Eigen::VectorXcd& phi) {
    const int n = grid.size();
    if (phi.size() != n) throw numeric_error("from_wavefunction: grid mismatch");
    double nrm = grid.integrate(Eigen::VectorXd(phi.cwiseAbs2()));
    if (nrm <= 0.0 || !std::isfinite(nrm))
        throw numeric_error("from_wavefunction: zero-norm input");
    Eigen::VectorXcd p = phi;
    if (std::abs(nrm - 1.0) > 1e-8) p /= std::sqrt(nrm);
    StateFunctional rho;
    rho.d = p.cwiseAbs2();
    rho.k = p * p.adjoint();   // k(w,w') = phi(w) phi*(w')
    return rho;
}

StateFunctional from_packet(const EnergyGrid& grid, const WavePacket& packet) {
    const int n = grid.size();
    Eigen::VectorXcd phi(n);
    for (int i = 0; i < n; ++i) phi[i] = packet.phi(grid.node(i));
    double nrm = grid.integrate(Eigen::VectorXd(phi.cwiseAbs2()));
    if (nrm <= 0.0) throw numeric_error("from_packet: zero-norm packet");
    StateFunctional rho = from_wavefunction(grid, phi);
    // carry the normalized closed form for continuations
    WavePacket norm = packet;
    double scale = 1.0 / std::sqrt(nrm);
    auto raw = packet.phi;
    auto raw_cont = packet.phi_cont;
    norm.phi = [raw, scale](double w) { return scale * raw(w); };
    norm.phi_cont = [raw_cont, scale](cplx z) { return scale * raw_cont(z); };
    rho.packet = norm;
    return rho;
}

StateFunctional time_invert(const StateFunctional& rho) {
    StateFunctional out;
    out.d = rho.d;
    out.k = rho.k.conjugate();
    // the conjugated kernel of a real packet is itself; closed form survives
    if (rho.packet) out.packet = rho.packet;
    return out;
}

std::pair<StateFunctional, StateFunctional> decompose(const StateFunctional& rho) {
    StateFunctional diag, kern;
    diag.d = rho.d;
    diag.k = Eigen::MatrixXcd::Zero(rho.k.rows(), rho.k.cols());
    kern.d = Eigen::VectorXd::Zero(rho.d.size());
    kern.k = rho.k;
    return {diag, kern};
}

} // namespace qscat
