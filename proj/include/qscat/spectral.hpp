#ifndef QSCAT_SPECTRAL_HPP
#define QSCAT_SPECTRAL_HPP

#include <array>
#include <string>
#include <vector>

#include "qscat/evolution.hpp"
#include "qscat/scattering.hpp"

namespace qscat {

/// The real biorthogonal family: right elements are LS dyads, left
/// elements the free-basis functionals. Pairings of the off-diagonal left
/// elements against an observable reduce to the fluctuating + kernel.
class RealSpectralFamily {
public:
    explicit RealSpectralFamily(const ScatteringModel& model);

    const ScatteringModel& model() const { return *model_; }

    /// (Phi~_w | O) = O_w; the diagonal left element is the free functional.
    double pair_diag(const ObservableKernel& obs, int node) const;

    /// (Phi~_{w w'} | O), the coefficient kernel of the expansion.
    cplx pair_offdiag(const ObservableKernel& obs, int node_i, int node_j) const;

    /// Eigenvalue label of the off-diagonal element.
    double eigenvalue(int node_i, int node_j) const;

    /// Delta-normalized Gram leakage of the discretized LS dyads:
    /// max over well-separated pairs of sqrt(w_i w_j) |<i+|j+>|.
    double gram_offdiag_leakage(const std::vector<int>& nodes) const;

    /// Reconstruction defect of an observable through the family, measured
    /// weakly against smooth probe vectors (the dyadic operator norm is
    /// limited by a near-threshold pinch artifact independent of n).
    double reconstruction_defect(const ObservableKernel& obs,
                                 const std::vector<Eigen::VectorXcd>& probes) const;
    /// Dyadic operator-norm defect, reported for diagnostics.
    double reconstruction_defect_opnorm(const ObservableKernel& obs) const;

private:
    const ScatteringModel* model_;
};

struct IdentityRow {
    std::string name;
    double value;      // measured
    double expected;   // target
    double residual;   // |value - expected|
};

/// The four energy/trace identities of the left family at representative
/// labels: (Phi~_w|H) = w, (Phi~_w|I) = 1, (Phi~_ww'|H) = 0, (Phi~_ww'|I) = 0.
std::vector<IdentityRow> phi_energy_trace(const ScatteringModel& model,
                                          const std::vector<int>& diag_nodes,
                                          const std::vector<std::pair<int, int>>& offdiag_pairs);

/// Contour used to deform the energy integrals off the axis: a ray at
/// -3pi/4 down to radius `ray_depth`, an arc, then a horizontal run at
/// depth `strip_depth` back to omega_max. The mirror path (conjugate) is
/// used for the other integration variable. The default hook encloses the
/// resonance while leaving the default packet and probe poles outside.
struct DeformationPath {
    double ray_depth = 1.8;
    double strip_depth = 0.5;
    int points_per_segment = 160;

    std::vector<cplx> z;   // lower-path quadrature points
    std::vector<cplx> w;   // complex quadrature weights (dz included)

    static DeformationPath build(const EnergyGrid& grid, double ray_depth = 1.8,
                                 double strip_depth = 0.5, int points_per_segment = 160);

    /// Is p inside the region between [0, omega_max] and the lower path?
    bool encloses_lower(cplx p, double omega_max) const;
    /// Mirror test for the upper path.
    bool encloses_upper(cplx p, double omega_max) const;
};

/// Gamov pair data and the machinery of the complex spectral family.
struct ComplexSpectralFamily {
    bool has_pole = true;
    cplx z0;                 // resonance, Im < 0
    cplx z0_conj;
    cplx residue;            // Res S at z0
    cplx factor_f0;          // [-2 pi i Res S]^{1/2}, principal branch
    cplx factor_f0_tilde;    // [ 2 pi i Res S*]^{1/2} = conj of the above
    cplx eta_II_deriv;       // eta_II'(z0)
    double decay_rate = 0.0; // 2 |Im z0|
    DeformationPath path;
};

ComplexSpectralFamily gamov_vectors(ScatteringModel& model, const DeformationPath& path);
ComplexSpectralFamily gamov_vectors(ScatteringModel& model);

/// Resonance-free family for kappa = 0: background terms only.
ComplexSpectralFamily free_complex_family(const EnergyGrid& grid);

/// Term breakdown of the contour-deformed evolution.
struct ComplexEvolutionTerms {
    double t = 0.0;
    cplx invariant;
    cplx gamov;        // e^{i(z0*-z0)t} double-residue term
    cplx mixed_upper;  // residue in the first slot, background in the second
    cplx mixed_lower;
    cplx background;
    cplx total() const { return invariant + gamov + mixed_upper + mixed_lower + background; }
};

/// Precomputed path data for one (state, observable) pair; reusable
/// across times.
class ComplexEvolutionPlan {
public:
    ComplexEvolutionPlan(const ScatteringModel& model, const ComplexSpectralFamily& family,
                         const StateFunctional& rho0, const ObservableKernel& obs);

    ComplexEvolutionTerms evaluate(double t) const;

    /// Magnitude of the pure Gamov coefficient (t = 0 amplitude).
    double gamov_amplitude() const;

    /// Zero-energy/zero-trace residuals of the left complex family against
    /// this plan's observable: {psi00, psi0w max, psiw0 max, psiww max}.
    std::array<double, 4> left_family_residuals() const;

private:
    const ScatteringModel* model_;
    ComplexSpectralFamily family_;
    double inv_term_;
    std::vector<cplx> zl_, wl_, zu_, wu_;
    Eigen::MatrixXcd bb_;          // F(z) F(z') M(z,z') on path x path
    Eigen::VectorXcd gb_, bg_;     // residue-side rows, weights folded in
    cplx gg_;
    std::array<double, 4> left_residuals_;
};

/// Assert continuation admissibility of state/observable poles for the
/// path; throws analyticity_error listing offenders.
void check_path_admissible(const ScatteringModel& model, const ComplexSpectralFamily& family,
                           const StateFunctional& rho0, const ObservableKernel& obs);

} // namespace qscat

#endif
