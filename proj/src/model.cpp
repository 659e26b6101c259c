#include "qscat/model.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qscat/errors.hpp"

namespace qscat {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
}

ScatteringModel::ScatteringModel(const EnergyGrid& grid, double kappa, FormFactor ff)
    : grid_(&grid), kappa_(kappa), ff_(std::move(ff)) {
    if (kappa_ < 0.0) throw config_error("ScatteringModel: kappa must be >= 0");
    const int n = grid.size();
    gs_.resize(n);
    g2s_.resize(n);
    for (int i = 0; i < n; ++i) {
        gs_[i] = ff_.g(grid.node(i));
        g2s_[i] = gs_[i] * gs_[i];
    }
    if (std::abs(ff_.g(1e-10)) > 1e-2)
        throw config_error("ScatteringModel: form factor must vanish at threshold");
    Eigen::VectorXcd pv = grid.pv_weights().cast<cplx>() * g2s_.cast<cplx>();
    eta_plus_.resize(n);
    for (int i = 0; i < n; ++i)
        eta_plus_[i] = 1.0 - kappa_ * pv[i] + kI * kPi * kappa_ * g2s_[i];
    // the rank-one S matrix needs eta(w+i0) != 0 on the axis
    for (int i = 0; i < n; ++i)
        if (std::abs(eta_plus_[i]) < 1e-8)
            throw numeric_error("ScatteringModel: eta(w+i0) vanishes near w=" +
                                std::to_string(grid.node(i)) + " (resonance on axis)");
}

cplx ScatteringModel::cauchy_g2(cplx z) const {
    const double omax = grid_->omega_max();
    double x0 = std::clamp(z.real(), 1e-9 * omax, omax);
    double f0 = ff_.g(x0) * ff_.g(x0);
    const auto& y = grid_->nodes();
    const auto& w = grid_->weights();
    cplx acc = 0.0;
    for (int i = 0; i < grid_->size(); ++i) acc += w[i] * (g2s_[i] - f0) / (z - y[i]);
    return acc + f0 * (std::log(z) - std::log(z - omax));
}

cplx ScatteringModel::eta(cplx z) const {
    if (z.imag() == 0.0 && z.real() >= 0.0 && z.real() <= grid_->omega_max())
        throw config_error("eta: z lies on the cut; use eta_boundary");
    return 1.0 - kappa_ * cauchy_g2(z);
}

cplx ScatteringModel::eta_boundary(double omega, Side side) const {
    if (!(omega > 0.0 && omega < grid_->omega_max()))
        throw config_error("eta_boundary: omega must lie strictly inside (0, omega_max)");
    auto g2fn = [this](double y) { return cplx(ff_.g(y) * ff_.g(y)); };
    cplx pv = grid_->principal_value(g2fn, omega);
    double g2 = ff_.g(omega) * ff_.g(omega);
    cplx val = 1.0 - kappa_ * pv;
    return side == Side::above ? val + kI * kPi * kappa_ * g2
                               : val - kI * kPi * kappa_ * g2;
}

cplx ScatteringModel::s_matrix(double omega) const {
    cplx ep = eta_boundary(omega, Side::above);
    if (std::abs(ep) < 1e-8)
        throw numeric_error("s_matrix: eta(w+i0) ~ 0 at w=" + std::to_string(omega) +
                            " (resonance on axis)");
    double g2 = ff_.g(omega) * ff_.g(omega);
    return 1.0 - 2.0 * kPi * kI * kappa_ * g2 / ep;
}

cplx ScatteringModel::eta_second_sheet(cplx z) const {
    if (z.imag() >= 0.0)
        throw config_error("eta_second_sheet: Im z must be negative");
    if (z.real() < 0.0 && std::abs(z.imag()) < 1e-12)
        throw config_error("eta_second_sheet: z on the continuation branch cut");
    return eta(z) + 2.0 * kPi * kI * kappa_ * ff_.g2_cont(z);
}

cplx ScatteringModel::eta_second_sheet_upper(cplx z) const {
    if (z.imag() <= 0.0)
        throw config_error("eta_second_sheet_upper: Im z must be positive");
    return eta(z) - 2.0 * kPi * kI * kappa_ * ff_.g2_cont(z);
}

cplx ScatteringModel::eta_second_sheet_deriv(cplx z) const {
    // eta'(z) = + kappa int g2/(z-y)^2 dy, exact for the quadrature model
    const auto& y = grid_->nodes();
    const auto& w = grid_->weights();
    cplx acc = 0.0;
    for (int i = 0; i < grid_->size(); ++i) {
        cplx dz = z - y[i];
        acc += w[i] * g2s_[i] / (dz * dz);
    }
    return kappa_ * acc + 2.0 * kPi * kI * kappa_ * ff_.dg2_cont(z);
}

double ScatteringModel::winding_count(const SearchRect& r) const {
    // phase tracking along the rectangle boundary with adaptive refinement
    std::vector<cplx> corners = {cplx(r.re_lo, r.im_hi), cplx(r.re_hi, r.im_hi),
                                 cplx(r.re_hi, r.im_lo), cplx(r.re_lo, r.im_lo),
                                 cplx(r.re_lo, r.im_hi)};
    double total = 0.0;
    for (int s = 0; s < 4; ++s) {
        cplx za = corners[s], zb = corners[s + 1];
        int m = 2000;
        for (int attempt = 0; attempt < 6; ++attempt) {
            double acc = 0.0, worst = 0.0;
            cplx prev = eta_second_sheet(za);
            for (int k = 1; k <= m; ++k) {
                cplx z = za + (zb - za) * (double(k) / m);
                cplx cur = eta_second_sheet(z);
                double d = std::arg(cur / prev);
                worst = std::max(worst, std::abs(d));
                acc += d;
                prev = cur;
            }
            if (worst < 1.0) {
                total += acc;
                break;
            }
            m *= 4;
            if (attempt == 5)
                throw numeric_error("find_pole: phase tracking failed on the search rectangle");
        }
    }
    return total / (2.0 * kPi);
}

const PoleInfo& ScatteringModel::find_pole() { return find_pole(default_rect()); }

const PoleInfo& ScatteringModel::find_pole(const SearchRect& rect) {
    if (kappa_ == 0.0) throw numeric_error("find_pole: no resonance (kappa = 0)");
    for (cplx p : ff_.poles)
        if (p.real() >= rect.re_lo && p.real() <= rect.re_hi &&
            p.imag() >= rect.im_lo && p.imag() <= rect.im_hi)
            throw config_error("find_pole: search rectangle contains a form-factor singularity");
    double cnt = winding_count(rect);
    int count = static_cast<int>(std::lround(cnt));
    if (std::abs(cnt - count) > 0.2)
        throw numeric_error("find_pole: inconclusive zero count " + std::to_string(cnt));
    if (count == 0) throw numeric_error("find_pole: no resonance in search window");
    if (count > 1)
        throw numeric_error("find_pole: multiple resonances, rectangle must be split");

    // coarse |eta_II| scan for the Newton seed
    cplx seed;
    double best = 1e300;
    const int mr = 80, mi = 48;
    for (int a = 0; a <= mr; ++a) {
        for (int b = 0; b <= mi; ++b) {
            cplx z(rect.re_lo + (rect.re_hi - rect.re_lo) * a / mr,
                   rect.im_lo + (rect.im_hi - rect.im_lo) * b / mi);
            double v = std::abs(eta_second_sheet(z));
            if (v < best) {
                best = v;
                seed = z;
            }
        }
    }
    cplx z = seed;
    bool ok = false;
    for (int it = 0; it < 50; ++it) {
        cplx f = eta_second_sheet(z);
        if (std::abs(f) < 1e-12) {
            ok = true;
            break;
        }
        z -= f / eta_second_sheet_deriv(z);
    }
    if (!ok && std::abs(eta_second_sheet(z)) > 1e-10)
        throw numeric_error("find_pole: Newton did not converge");
    cplx deriv = eta_second_sheet_deriv(z);
    if (std::abs(deriv) < 1e-6)
        throw numeric_error("find_pole: zero not simple (|eta_II'| ~ 0)");
    PoleInfo info;
    info.z0 = z;
    info.eta_II_deriv = deriv;
    info.residue = -2.0 * kPi * kI * kappa_ * ff_.g2_cont(z) / deriv;
    info.rect_count = count;
    pole_ = info;
    return *pole_;
}

cplx ScatteringModel::s_residue() const {
    if (!pole_) throw numeric_error("s_residue: pole not located; call find_pole first");
    return pole_->residue;
}

cplx ScatteringModel::cauchy_transform(const Eigen::VectorXcd& h, cplx z) const {
    const double omax = grid_->omega_max();
    const auto& y = grid_->nodes();
    const auto& w = grid_->weights();
    const int n = grid_->size();
    double dist = std::abs(z.imag());
    if (z.real() < 0.0) dist = std::abs(z);
    if (z.real() > omax) dist = std::abs(z - omax);
    // spacing at the interval center sets the near-cut threshold
    double spacing = kPi * omax / (2.0 * n);
    cplx acc = 0.0;
    if (dist > 4.0 * spacing) {
        for (int i = 0; i < n; ++i) acc += w[i] * h[i] / (z - y[i]);
        return acc;
    }
    // subtraction with the sample nearest to Re z
    int i0 = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(y[i] - z.real()) < std::abs(y[i0] - z.real())) i0 = i;
    cplx f0 = h[i0];
    for (int i = 0; i < n; ++i) acc += w[i] * (h[i] - f0) / (z - y[i]);
    return acc + f0 * (std::log(z) - std::log(z - omax));
}

cplx ScatteringModel::cauchy_transform(const Eigen::VectorXd& h, cplx z) const {
    return cauchy_transform(Eigen::VectorXcd(h.cast<cplx>()), z);
}

} // namespace qscat
