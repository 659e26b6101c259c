#include "qscat/scattering.hpp"

#include <cmath>
#include <numbers>

#include "qscat/errors.hpp"

namespace qscat {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// value at the removable diagonal by 4-point Lagrange extrapolation along
// the row (the kernels handled here vanish linearly on the diagonal)
void fill_diagonal_by_extrapolation(const EnergyGrid& grid, Eigen::MatrixXcd& M) {
    const int n = grid.size();
    for (int i = 0; i < n; ++i) {
        int js[4];
        int cnt = 0;
        for (int d : {-2, -1, 1, 2}) {
            int j = i + d;
            if (j >= 0 && j < n) js[cnt++] = j;
        }
        cplx val = 0.0;
        for (int a = 0; a < cnt; ++a) {
            double t = 1.0;
            for (int b = 0; b < cnt; ++b)
                if (b != a) t *= (grid.node(i) - grid.node(js[b])) / (grid.node(js[a]) - grid.node(js[b]));
            val += t * M(i, js[a]);
        }
        M(i, i) = val;
    }
}

} // namespace

cplx LSKernel::regular(const ScatteringModel& model, double y) const {
    return pv_coeff * model.form_factor().g(y) / (omega - y);
}

LSKernel ls_plus(const ScatteringModel& model, int node_index) {
    const EnergyGrid& grid = model.grid();
    if (node_index < 0 || node_index >= grid.size())
        throw config_error("ls_plus: node index out of range");
    LSKernel k;
    k.node = node_index;
    k.omega = grid.node(node_index);
    double g = model.g_samples()[node_index];
    cplx ep = model.eta_plus()[node_index];
    k.pv_coeff = model.kappa() * g / ep;
    k.delta_coeff = -kI * kPi * model.kappa() * g * g / ep;
    return k;
}

Eigen::VectorXcd ls_plus_vector(const ScatteringModel& model, int j) {
    const EnergyGrid& grid = model.grid();
    const int n = grid.size();
    LSKernel k = ls_plus(model, j);
    Eigen::VectorXcd v(n);
    for (int m = 0; m < n; ++m) {
        if (m == j) continue;
        v[m] = std::sqrt(grid.weight(m)) * k.pv_coeff * model.g_samples()[m] /
               (k.omega - grid.node(m));
    }
    v[j] = (1.0 + k.delta_coeff) / std::sqrt(grid.weight(j));
    return v;
}

PlusRepresentation to_plus_representation(const ScatteringModel& model,
                                          const StateFunctional& rho) {
    const EnergyGrid& grid = model.grid();
    validate(grid, rho);
    const int n = grid.size();
    const Eigen::MatrixXd& V = grid.pv_weights();
    const Eigen::VectorXd& g = model.g_samples();
    const Eigen::VectorXcd& ep = model.eta_plus();
    const double kap = model.kappa();

    // pairing kernel K = conj(k); the state coefficients enter conjugated
    Eigen::MatrixXcd K = rho.k.conjugate();
    Eigen::MatrixXcd Dg = g.cast<cplx>().asDiagonal();
    Eigen::MatrixXcd Vc = V.cast<cplx>();

    Eigen::VectorXcd kt(n), kc(n);  // kappa g/eta_plus and its conjugate partner
    for (int i = 0; i < n; ++i) {
        kt[i] = kap * g[i] / ep[i];
        kc[i] = kap * g[i] / std::conj(ep[i]);
    }

    Eigen::MatrixXcd P1 = Vc * (Dg * K);            // PV over the first slot
    Eigen::MatrixXcd P2 = (K * Dg) * Vc.transpose();// PV over the second slot
    Eigen::MatrixXcd PP = Vc * (Dg * P2);

    Eigen::MatrixXcd c = K;
    for (int i = 0; i < n; ++i) c(i, i) = rho.d[i];

    for (int i = 0; i < n; ++i) {
        for (int jj = 0; jj < n; ++jj) {
            cplx gK = g[jj] * K(i, jj);
            cplx gKi = g[i] * K(i, jj);
            cplx t2 = kc[jj] * (P2(i, jj) + kI * kPi * gK);
            cplx t3 = kt[i] * (P1(i, jj) - kI * kPi * gKi);
            cplx t4 = kt[i] * kc[jj] *
                      (PP(i, jj) + kI * kPi * g[jj] * P1(i, jj) - kI * kPi * g[i] * P2(i, jj) +
                       kPi * kPi * g[i] * g[jj] * K(i, jj));
            c(i, jj) += t2 + t3 + t4;
        }
    }
    // the assembly is Hermitian up to roundoff; make it exact
    c = 0.5 * (c + c.adjoint()).eval();

    PlusRepresentation rep;
    rep.c = c;
    rep.c_diag = c.diagonal().real();
    double tr = grid.integrate(rep.c_diag);
    if (std::abs(tr - 1.0) > 1e-8)
        throw numeric_error("to_plus_representation: trace drift " + std::to_string(tr - 1.0));
    if (rep.c_diag.minCoeff() < -1e-10)
        throw numeric_error("to_plus_representation: negative density " +
                            std::to_string(rep.c_diag.minCoeff()));
    return rep;
}

Eigen::MatrixXcd plus_fluc_kernel(const ScatteringModel& model, const ObservableKernel& obs) {
    const EnergyGrid& grid = model.grid();
    validate(grid, obs);
    const int n = grid.size();
    const Eigen::MatrixXd& V = grid.pv_weights();
    const Eigen::VectorXd& g = model.g_samples();
    const Eigen::VectorXd& g2 = model.g2_samples();
    const Eigen::VectorXcd& ep = model.eta_plus();
    const double kap = model.kappa();

    Eigen::VectorXcd kt(n), kc(n);
    for (int i = 0; i < n; ++i) {
        kt[i] = kap * g[i] / ep[i];
        kc[i] = kap * g[i] / std::conj(ep[i]);
    }

    // diagonal part of O: N(w,w') / (w'-w), removable on the diagonal
    Eigen::VectorXcd og2 = obs.diag.cwiseProduct(g2).cast<cplx>();
    Eigen::VectorXcd p = V.cast<cplx>() * og2;
    Eigen::VectorXcd jm = p + kI * kPi * og2;
    Eigen::VectorXcd jp = p - kI * kPi * og2;

    Eigen::MatrixXcd Nt(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            cplx N = kap * g[i] * g[j] *
                     (obs.diag[i] / ep[j] - obs.diag[j] / std::conj(ep[i]) +
                      kap * (jm[i] - jp[j]) / (std::conj(ep[i]) * ep[j]));
            Nt(i, j) = N / (grid.node(j) - grid.node(i));
        }
    }
    fill_diagonal_by_extrapolation(grid, Nt);

    // regular kernel part
    Eigen::MatrixXcd Vc = V.cast<cplx>();
    Eigen::MatrixXcd Dg = g.cast<cplx>().asDiagonal();
    Eigen::MatrixXcd P1 = Vc * (Dg * obs.reg);
    Eigen::MatrixXcd P2 = (obs.reg * Dg) * Vc.transpose();
    Eigen::MatrixXcd PP = Vc * (Dg * P2);

    Eigen::MatrixXcd M = obs.reg;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx O = obs.reg(i, j);
            M(i, j) += kc[i] * (P1(i, j) + kI * kPi * g[i] * O) +
                       kt[j] * (P2(i, j) - kI * kPi * g[j] * O) +
                       kc[i] * kt[j] *
                           (PP(i, j) - kI * kPi * g[j] * P1(i, j) + kI * kPi * g[i] * P2(i, j) +
                            kPi * kPi * g[i] * g[j] * O);
        }
    }
    M += Nt;
    M = 0.5 * (M + M.adjoint()).eval();
    return M;
}

std::pair<ObservableKernel, ObservableKernel> split_observable(const ScatteringModel& model,
                                                               const ObservableKernel& obs) {
    const EnergyGrid& grid = model.grid();
    validate(grid, obs);
    const int n = grid.size();
    const Eigen::VectorXd& g = model.g_samples();
    const Eigen::VectorXd& g2 = model.g2_samples();
    const Eigen::VectorXcd& ep = model.eta_plus();
    const double kap = model.kappa();

    // free-basis regular kernel of O_inv = int O_w |w+><w+| dw:
    //   g(y) g(y') W(y,y')/(y - y'),
    //   W = kappa O_y/eta+*(y) - kappa O_y'/eta+(y') + Q(y) - Q(y')
    //       - i pi (m(y) + m(y')),   m = kappa^2 g^2 O / |eta+|^2,
    //   Q(y) = PV int m(s)/(s - y) ds; W vanishes on the diagonal.
    Eigen::VectorXcd m(n);
    for (int i = 0; i < n; ++i) {
        double a2 = std::norm(ep[i]);
        m[i] = kap * kap * g2[i] * obs.diag[i] / a2;
    }
    Eigen::VectorXcd Q = -(grid.pv_weights().cast<cplx>() * m);

    Eigen::MatrixXcd R(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            cplx W = kap * obs.diag[i] / std::conj(ep[i]) - kap * obs.diag[j] / ep[j] +
                     Q[i] - Q[j] - kI * kPi * (m[i] + m[j]);
            R(i, j) = g[i] * g[j] * W / (grid.node(i) - grid.node(j));
        }
    }
    fill_diagonal_by_extrapolation(grid, R);
    R = 0.5 * (R + R.adjoint()).eval();

    ObservableKernel inv, fluc;
    inv.diag = obs.diag;
    inv.reg = R;
    fluc.diag = Eigen::VectorXd::Zero(n);
    fluc.reg = obs.reg - R;
    return {inv, fluc};
}

} // namespace qscat
