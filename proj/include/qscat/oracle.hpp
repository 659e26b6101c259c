#ifndef QSCAT_ORACLE_HPP
#define QSCAT_ORACLE_HPP

#include <Eigen/Dense>

#include "qscat/functionals.hpp"
#include "qscat/model.hpp"

namespace qscat {

/// Brute-force referee: the model discretized to a dense Hermitian matrix
/// in the normalized basis |i> ~ sqrt(w_i)|w_i>, so kernels carry
/// sqrt(w_i w_j) and singular diagonals carry no weight:
///   H[i][j] = w_i delta_ij + kappa sqrt(w_i w_j) g_i g_j,
///   O[i][j] = O_i delta_ij + sqrt(w_i w_j) O_ij.
/// Pure states map to phi_vec = sqrt(w) .* phi, so Tr(rho O) equals the
/// functional pairing exactly for packet-built states.
class DiscretizedSystem {
public:
    explicit DiscretizedSystem(const ScatteringModel& model);

    const Eigen::MatrixXcd& hamiltonian() const { return H_; }
    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }

    Eigen::MatrixXcd map_observable(const ObservableKernel& obs) const;
    /// Density matrix of a pure state from its wavefunction samples.
    Eigen::MatrixXcd pure_state_matrix(const Eigen::VectorXcd& phi) const;

    /// e^{-iHt} rho e^{iHt} by eigenbasis rotation.
    Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& rho, double t) const;

    /// Tr(rho O_mapped) for an evolved (or otherwise matrix-valued) state.
    cplx mean(const Eigen::MatrixXcd& rho, const ObservableKernel& obs) const;

    /// Dual pairing of a functional state against a mapped observable,
    /// part-wise: the singular and regular parts are never conflated, so
    /// this reproduces pair() identically.
    cplx mean(const StateFunctional& rho, const ObservableKernel& obs) const;

    /// Infinite-time average of rho in the eigenbasis, mapped back to the
    /// free-basis diagonal density d(w_i) (weight-divided).
    Eigen::VectorXd longtime_diagonal(const Eigen::MatrixXcd& rho) const;

private:
    const ScatteringModel* model_;
    Eigen::MatrixXcd H_;
    Eigen::VectorXd evals_;
    Eigen::MatrixXcd evecs_;
};

} // namespace qscat

#endif
