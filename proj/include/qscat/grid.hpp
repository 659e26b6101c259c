#ifndef QSCAT_GRID_HPP
#define QSCAT_GRID_HPP

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qscat {

using cplx = std::complex<double>;

/// Gauss-Legendre discretization of the energy half-axis truncated at
/// omega_max, plus the principal-value machinery shared by every module.
///
/// Principal values are computed by singularity subtraction,
///   PV int f/(x0-w) dw = int [f(w)-f(x0)]/(x0-w) dw + f(x0) ln(x0/(omega_max-x0)),
/// which composes with the fixed Gauss rule. When the singular point is a
/// grid node the subtracted integrand at that node equals -f'(x0); the
/// cached weight matrix folds a local Lagrange-derivative stencil into the
/// node weight so PV integrals of sampled functions stay linear in the
/// samples.
class EnergyGrid {
public:
    EnergyGrid(int n, double omega_max);

    int size() const { return static_cast<int>(nodes_.size()); }
    double omega_max() const { return omega_max_; }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    double node(int i) const { return nodes_[i]; }
    double weight(int i) const { return weights_[i]; }

    /// Largest time the oscillatory factors e^{i(w-w')t} are resolved for.
    double t_max() const;

    /// Plain quadrature of a callable. Non-finite values are rejected.
    cplx integrate(const std::function<cplx(double)>& f) const;

    /// Quadrature of node samples.
    cplx integrate(const Eigen::VectorXcd& samples) const;
    double integrate(const Eigen::VectorXd& samples) const;

    /// PV int_0^omega_max f(w)/(x0 - w) dw for a callable f smooth near x0.
    cplx principal_value(const std::function<cplx(double)>& f, double x0) const;

    /// True when x0 is within one local node spacing of either endpoint;
    /// the subtraction log term is poorly conditioned there.
    bool pv_low_accuracy(double x0) const;

    /// Row i applies PV int f/(w_i - y) dy to node samples of f.
    const Eigen::MatrixXd& pv_weights() const { return pv_; }

    /// PV integral of sampled data with the singularity at node i0.
    cplx principal_value_at_node(const Eigen::VectorXcd& samples, int i0) const;

private:
    double omega_max_;
    Eigen::VectorXd nodes_, weights_;
    Eigen::MatrixXd pv_;

    void build_pv_weights();
};

/// Derivative-at-x0 weights of the Lagrange interpolant through xs.
/// x0 must be one of the xs.
std::vector<double> lagrange_derivative_weights(const std::vector<double>& xs, double x0);

} // namespace qscat

#endif
