#ifndef QSCAT_EVOLUTION_HPP
#define QSCAT_EVOLUTION_HPP

#include <string>
#include <vector>

#include "qscat/scattering.hpp"

namespace qscat {

struct EvolutionResult {
    double t = 0.0;
    cplx mean;
    double trace = 0.0;
    double energy = 0.0;
    double offdiag_mag = 0.0;   // |(Q rho_t | O)|
};

/// Mean value at time t in the + basis:
///   (rho_t|O) = int c(w) O_w dw
///             + int int e^{i(w-w')t} c(w,w') <w+|O_fluc|w'+> dw dw'.
/// Requires 0 <= t <= grid.t_max(); beyond that the oscillatory factors
/// are undersampled and the request is rejected.
cplx evolve_mean(const ScatteringModel& model, const PlusRepresentation& rep,
                 const ObservableKernel& obs, double t);

/// Same, with the fluctuating kernel precomputed by plus_fluc_kernel.
cplx evolve_mean(const ScatteringModel& model, const PlusRepresentation& rep,
                 const ObservableKernel& obs, const Eigen::MatrixXcd& mfluc, double t);

/// Full diagnostics row (trace, energy, off-diagonal magnitude).
EvolutionResult evolve_result(const ScatteringModel& model, const PlusRepresentation& rep,
                              const ObservableKernel& obs, const Eigen::MatrixXcd& mfluc,
                              double t);

/// The invariant final state: diagonal density c(w), vanishing kernel.
StateFunctional final_state(const ScatteringModel& model, const StateFunctional& rho0);

/// The H observable of the model: diagonal w plus the potential kernel.
ObservableKernel hamiltonian_observable(const ScatteringModel& model);

struct IrreversibilityReport {
    double stationarity_final = 0.0;      // max |mean(t) - pair| from rho_inf
    double stationarity_reversed = 0.0;   // same for T rho_inf
    double recovery_margin = 0.0;         // distance of evolved T rho_inf from T rho_0
    double purity_violation = 0.0;        // max |k_ii - d_i| of rho_inf vs its d
    bool final_is_mixed = false;
    std::vector<std::string> notes;
};

IrreversibilityReport irreversibility_suite(const ScatteringModel& model,
                                            const StateFunctional& rho0,
                                            const std::vector<ObservableKernel>& probes,
                                            const std::vector<double>& times);

} // namespace qscat

#endif
