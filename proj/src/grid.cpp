#include "qscat/grid.hpp"

#include <cmath>
#include <numbers>

#include "qscat/errors.hpp"

namespace qscat {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
    x.resize(n);
    w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

} // namespace

std::vector<double> lagrange_derivative_weights(const std::vector<double>& xs, double x0) {
    const int m = static_cast<int>(xs.size());
    int i0 = 0;
    for (int j = 1; j < m; ++j)
        if (std::abs(xs[j] - x0) < std::abs(xs[i0] - x0)) i0 = j;
    std::vector<double> D(m, 0.0);
    for (int j = 0; j < m; ++j) {
        if (j == i0) {
            double s = 0.0;
            for (int k = 0; k < m; ++k)
                if (k != i0) s += 1.0 / (x0 - xs[k]);
            D[j] = s;
        } else {
            double num = 1.0;
            for (int k = 0; k < m; ++k)
                if (k != j && k != i0) num *= (x0 - xs[k]) / (xs[j] - xs[k]);
            D[j] = num / (xs[j] - xs[i0]);
        }
    }
    return D;
}

EnergyGrid::EnergyGrid(int n, double omega_max) : omega_max_(omega_max) {
    if (n < 2) throw config_error("EnergyGrid: n must be >= 2");
    if (!(omega_max > 0.0)) throw config_error("EnergyGrid: omega_max must be positive");
    Eigen::VectorXd x, w;
    gauss_legendre(n, x, w);
    nodes_ = 0.5 * omega_max * (x.array() + 1.0);
    weights_ = 0.5 * omega_max * w;
    build_pv_weights();
}

double EnergyGrid::t_max() const {
    return std::numbers::pi * size() / (2.0 * omega_max_);
}

cplx EnergyGrid::integrate(const std::function<cplx(double)>& f) const {
    cplx acc = 0.0;
    for (int i = 0; i < size(); ++i) {
        cplx v = f(nodes_[i]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw numeric_error("integrate: non-finite integrand at w=" + std::to_string(nodes_[i]));
        acc += weights_[i] * v;
    }
    return acc;
}

cplx EnergyGrid::integrate(const Eigen::VectorXcd& samples) const {
    return (weights_.cast<cplx>().array() * samples.array()).sum();
}

double EnergyGrid::integrate(const Eigen::VectorXd& samples) const {
    return weights_.dot(samples);
}

bool EnergyGrid::pv_low_accuracy(double x0) const {
    const int n = size();
    double lo = nodes_[1] - nodes_[0];
    double hi = nodes_[n - 1] - nodes_[n - 2];
    return x0 < nodes_[0] + lo || x0 > nodes_[n - 1] - hi;
}

cplx EnergyGrid::principal_value(const std::function<cplx(double)>& f, double x0) const {
    if (!(x0 > 0.0 && x0 < omega_max_))
        throw config_error("principal_value: x0 must lie inside (0, omega_max)");
    const cplx f0 = f(x0);
    cplx acc = f0 * std::log(x0 / (omega_max_ - x0));
    // spacing below which the difference quotient switches to a derivative
    const double eps = 1e-7 * omega_max_;
    for (int i = 0; i < size(); ++i) {
        double dx = x0 - nodes_[i];
        cplx term;
        if (std::abs(dx) < eps) {
            double h = 1e-6 * omega_max_;
            term = -(f(x0 + h) - f(x0 - h)) / (2.0 * h);
        } else {
            term = (f(nodes_[i]) - f0) / dx;
        }
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
            throw numeric_error("principal_value: non-finite integrand near w=" + std::to_string(nodes_[i]));
        acc += weights_[i] * term;
    }
    return acc;
}

cplx EnergyGrid::principal_value_at_node(const Eigen::VectorXcd& samples, int i0) const {
    return (pv_.row(i0).transpose().cast<cplx>().array() * samples.array()).sum();
}

void EnergyGrid::build_pv_weights() {
    const int n = size();
    const int stencil = std::min(7, n);
    pv_.setZero(n, n);
    for (int i = 0; i < n; ++i) {
        const double x0 = nodes_[i];
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            pv_(i, k) = weights_[k] / (x0 - nodes_[k]);
            s += pv_(i, k);
        }
        pv_(i, i) = std::log(x0 / (omega_max_ - x0)) - s;
        int lo = std::max(0, i - stencil / 2);
        int hi = std::min(n, lo + stencil);
        lo = std::max(0, hi - stencil);
        std::vector<double> xs(nodes_.data() + lo, nodes_.data() + hi);
        auto D = lagrange_derivative_weights(xs, x0);
        for (int j = 0; j < hi - lo; ++j) pv_(i, lo + j) -= weights_[i] * D[j];
    }
}

} // namespace qscat
