#include "qscat/oracle.hpp"

#include <cmath>

#include "qscat/errors.hpp"

namespace qscat {

DiscretizedSystem::DiscretizedSystem(const ScatteringModel& model) : model_(&model) {
    const EnergyGrid& grid = model.grid();
    const int n = grid.size();
    Eigen::VectorXd u = grid.weights().cwiseSqrt().cwiseProduct(model.g_samples());
    H_ = grid.nodes().asDiagonal().toDenseMatrix().cast<cplx>();
    H_ += model.kappa() * (u * u.transpose()).cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H_);
    if (es.info() != Eigen::Success)
        throw numeric_error("DiscretizedSystem: eigendecomposition failed");
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
    // near-degenerate pairs make the time average ill-defined
    for (int i = 1; i < n; ++i)
        if (evals_[i] - evals_[i - 1] < 1e-12)
            throw numeric_error("DiscretizedSystem: near-degenerate eigenvalues at index " +
                                std::to_string(i));
}

Eigen::MatrixXcd DiscretizedSystem::map_observable(const ObservableKernel& obs) const {
    const EnergyGrid& grid = model_->grid();
    Eigen::VectorXd sq = grid.weights().cwiseSqrt();
    Eigen::MatrixXcd O = (sq * sq.transpose()).cast<cplx>().cwiseProduct(obs.reg);
    O += obs.diag.asDiagonal().toDenseMatrix().cast<cplx>();
    return O;
}

Eigen::MatrixXcd DiscretizedSystem::pure_state_matrix(const Eigen::VectorXcd& phi) const {
    const EnergyGrid& grid = model_->grid();
    Eigen::VectorXcd v = grid.weights().cwiseSqrt().cast<cplx>().cwiseProduct(phi);
    double nrm = v.squaredNorm();
    if (nrm <= 0.0) throw numeric_error("pure_state_matrix: zero-norm input");
    v /= std::sqrt(nrm);
    return v * v.adjoint();
}

Eigen::MatrixXcd DiscretizedSystem::evolve(const Eigen::MatrixXcd& rho, double t) const {
    const int n = evals_.size();
    Eigen::VectorXcd ph(n);
    for (int i = 0; i < n; ++i) ph[i] = std::polar(1.0, -evals_[i] * t);
    Eigen::MatrixXcd re = evecs_.adjoint() * rho * evecs_;
    re = ph.asDiagonal() * re * ph.conjugate().asDiagonal();
    return evecs_ * re * evecs_.adjoint();
}

cplx DiscretizedSystem::mean(const Eigen::MatrixXcd& rho, const ObservableKernel& obs) const {
    return (rho * map_observable(obs)).trace();
}

cplx DiscretizedSystem::mean(const StateFunctional& rho, const ObservableKernel& obs) const {
    return pair(model_->grid(), rho, obs);
}

Eigen::VectorXd DiscretizedSystem::longtime_diagonal(const Eigen::MatrixXcd& rho) const {
    Eigen::MatrixXcd re = evecs_.adjoint() * rho * evecs_;
    Eigen::MatrixXcd avg = evecs_ * re.diagonal().asDiagonal() * evecs_.adjoint();
    return avg.diagonal().real().cwiseQuotient(model_->grid().weights());
}

} // namespace qscat
