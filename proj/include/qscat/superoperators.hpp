#ifndef QSCAT_SUPEROPERATORS_HPP
#define QSCAT_SUPEROPERATORS_HPP

#include <Eigen/Dense>

#include "qscat/grid.hpp"

namespace qscat {

/// Commutator superoperator O -> [H, O] on n x n matrices, realized as an
/// n^2 x n^2 dense matrix on column-major vec(O). The commutator map is
/// self-adjoint in the Hilbert-Schmidt inner product for Hermitian H, so
/// the same matrix serves the state side and the observable side.
class FiniteLiouvillian {
public:
    explicit FiniteLiouvillian(Eigen::MatrixXcd hamiltonian);

    int dim() const { return static_cast<int>(H_.rows()); }
    const Eigen::MatrixXcd& hamiltonian() const { return H_; }
    const Eigen::MatrixXcd& matrix() const { return L_; }

    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& O) const;  // [H, O]

private:
    Eigen::MatrixXcd H_;
    Eigen::MatrixXcd L_;
};

/// Diagonal/off-diagonal projector pair on the n^2 superoperator space.
struct ProjectorPair {
    Eigen::MatrixXd P;  // diagonal extractor
    Eigen::MatrixXd Q;  // complement

    static ProjectorPair diagonal(int n);
};

/// [H, O]; identical to FiniteLiouvillian::apply, provided as a free
/// function for the probe-level checks.
Eigen::MatrixXcd apply_ldag(const FiniteLiouvillian& L, const Eigen::MatrixXcd& O);

/// Collision operator applied to a probe:
///   Psi(z) O = -P L Q (Q L Q + z)^{-1} Q L P O.
Eigen::MatrixXcd apply_collision(const FiniteLiouvillian& L, const ProjectorPair& pr,
                                 cplx z, const Eigen::MatrixXcd& probe);

/// Assemble the projector-partitioned resolvent from its definition and
/// return the operator-norm residual against the direct inverse of (L - z).
double verify_resolvent_partition(const FiniteLiouvillian& L, const ProjectorPair& pr, cplx z);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

} // namespace qscat

#endif
