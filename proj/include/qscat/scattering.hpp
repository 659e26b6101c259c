#ifndef QSCAT_SCATTERING_HPP
#define QSCAT_SCATTERING_HPP

#include <utility>

#include <Eigen/Dense>

#include "qscat/functionals.hpp"
#include "qscat/model.hpp"

namespace qscat {

/// Closed-form kernel of the interacting eigenvector |w+> at a grid node:
/// a unit delta at y = w plus the regular part
///   r_w(y) = kappa g(w) g(y) / [eta(w+i0) (w - y + i0)],
/// stored as the Plemelj split (PV part coefficient + delta coefficient).
struct LSKernel {
    int node;              // index of the energy label on the grid
    double omega;
    cplx pv_coeff;         // kappa g(w)/eta(w+i0), multiplies g(y) PV 1/(w-y)
    cplx delta_coeff;      // -i pi kappa g(w)^2/eta(w+i0), adds to the delta

    /// Regular part at y != omega (plain value, no i0 needed off-node).
    cplx regular(const ScatteringModel& model, double y) const;
};

/// State transported to the |w+> basis: real diagonal density c(w) plus a
/// Hermitian off-diagonal kernel c(w,w'), sampled on node pairs. The full
/// matrix keeps c_diag on its diagonal.
struct PlusRepresentation {
    Eigen::VectorXd c_diag;
    Eigen::MatrixXcd c;     // c(w_i, w_j); diagonal equals c_diag

    /// Nodes where the assembly is threshold-limited (lowest two).
    int low_accuracy_nodes = 2;
};

LSKernel ls_plus(const ScatteringModel& model, int node_index);

/// Discretized |w+> in the normalized basis |i> ~ sqrt(w_i)|w_i>; an
/// approximate eigenvector of the oracle Hamiltonian at interior nodes.
Eigen::VectorXcd ls_plus_vector(const ScatteringModel& model, int node_index);

/// Moller-type transform of a state functional into the + basis.
PlusRepresentation to_plus_representation(const ScatteringModel& model,
                                          const StateFunctional& rho);

/// Kernel of the fluctuating part of an observable in the + basis,
/// <w+|O_fluc|w'+>, sampled on node pairs (Hermitian, smooth; the diagonal
/// is filled by local extrapolation of the removable limit).
Eigen::MatrixXcd plus_fluc_kernel(const ScatteringModel& model, const ObservableKernel& obs);

/// Split into the invariant part (diagonal in the + basis) and the
/// fluctuating remainder with no diagonal singularity.
std::pair<ObservableKernel, ObservableKernel> split_observable(const ScatteringModel& model,
                                                               const ObservableKernel& obs);

} // namespace qscat

#endif
