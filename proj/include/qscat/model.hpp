#ifndef QSCAT_MODEL_HPP
#define QSCAT_MODEL_HPP

#include <optional>

#include <Eigen/Dense>

#include "qscat/grid.hpp"
#include "qscat/presets.hpp"

namespace qscat {

enum class Side { above, below };

struct SearchRect {
    double re_lo, re_hi, im_lo, im_hi;  // im_lo < im_hi < 0
};

struct PoleInfo {
    cplx z0;             // second-sheet zero of eta, Im z0 < 0
    cplx eta_II_deriv;   // eta_II'(z0)
    cplx residue;        // residue of the continued S at z0
    int rect_count;      // argument-principle zero count in the search rect
};

/// Rank-one scattering model H = H0 + kappa |g><g| on [0, omega_max].
///
/// Everything reduces to the spectral function
///   eta(z) = 1 - kappa int |g(y)|^2/(z - y) dy,
/// its boundary values eta(w +- i0), and the continuation through the cut
///   eta_II(z) = eta(z) + 2 pi i kappa G(z)   (Im z < 0),
/// whose zero z0 is the resonance. The continued S matrix is eta/eta_II,
/// so Res S|_{z0} = -2 pi i kappa G(z0)/eta_II'(z0).
class ScatteringModel {
public:
    ScatteringModel(const EnergyGrid& grid, double kappa, FormFactor ff);

    const EnergyGrid& grid() const { return *grid_; }
    double kappa() const { return kappa_; }
    const FormFactor& form_factor() const { return ff_; }

    const Eigen::VectorXd& g_samples() const { return gs_; }
    const Eigen::VectorXd& g2_samples() const { return g2s_; }
    /// eta(w + i0) at every node.
    const Eigen::VectorXcd& eta_plus() const { return eta_plus_; }

    /// First-sheet eta at any z off the cut [0, omega_max]. Uses the
    /// subtraction form with an exact log, uniformly accurate near the cut.
    cplx eta(cplx z) const;

    /// Boundary value eta(w +- i0), w strictly inside (0, omega_max).
    cplx eta_boundary(double omega, Side side) const;

    /// S(w) = eta(w - i0)/eta(w + i0), unimodular.
    cplx s_matrix(double omega) const;

    /// Continuation of eta from above through the cut; Im z < 0 required,
    /// z away from the continuation's own singularities.
    cplx eta_second_sheet(cplx z) const;
    /// Mirror continuation of eta(w - i0) upward; zero at conj(z0).
    cplx eta_second_sheet_upper(cplx z) const;
    cplx eta_second_sheet_deriv(cplx z) const;

    /// Locate the resonance: coarse scan + Newton, then an adaptive
    /// argument-principle count over the rectangle must give exactly 1.
    const PoleInfo& find_pole(const SearchRect& rect);
    const PoleInfo& find_pole();   // default rectangle
    const std::optional<PoleInfo>& pole() const { return pole_; }

    /// Residue of the continued S at the located pole.
    cplx s_residue() const;

    /// Cauchy transform int h(y)/(z - y) dy of node samples, with the
    /// subtraction form (using f0 near Re z) when z approaches the cut.
    cplx cauchy_transform(const Eigen::VectorXcd& h, cplx z) const;
    cplx cauchy_transform(const Eigen::VectorXd& h, cplx z) const;

    static SearchRect default_rect() { return {-0.95, 10.0, -2.0, -1e-4}; }

private:
    const EnergyGrid* grid_;
    double kappa_;
    FormFactor ff_;
    Eigen::VectorXd gs_, g2s_;
    Eigen::VectorXcd eta_plus_;
    std::optional<PoleInfo> pole_;

    cplx cauchy_g2(cplx z) const;   // int g2/(z-y) dy, subtraction form
    double winding_count(const SearchRect& rect) const;
};

} // namespace qscat

#endif
