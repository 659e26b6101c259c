#ifndef QSCAT_FUNCTIONALS_HPP
#define QSCAT_FUNCTIONALS_HPP

#include <functional>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "qscat/grid.hpp"
#include "qscat/presets.hpp"

namespace qscat {

/// Observable with a diagonal singularity: a real diagonal part O_w plus a
/// Hermitian regular kernel O_ww', both sampled on the grid. When built
/// from a preset the closed forms travel along so that off-node values and
/// analytic continuations are available.
struct ObservableKernel {
    Eigen::VectorXd diag;    // O_w at nodes
    Eigen::MatrixXcd reg;    // O_ww' at node pairs, Hermitian

    std::optional<ObservableSpec> spec;  // closed forms, when preset-built

    bool continuable() const { return spec && (spec->diag_cont || spec->reg_cont); }
};

/// State as an antilinear functional over observables: a nonnegative
/// diagonal density d(w) with unit weight plus a Hermitian kernel k(w,w').
/// The pairing applies conjugate(k) to the observable kernel, so for a
/// packet phi the stored kernel is k(w,w') = phi(w) phi*(w').
struct StateFunctional {
    Eigen::VectorXd d;
    Eigen::MatrixXcd k;

    std::optional<WavePacket> packet;    // closed form, when packet-built

    bool continuable() const { return packet.has_value(); }
};

/// Construct an observable on a grid from its closed-form spec.
ObservableKernel make_observable(const EnergyGrid& grid, const ObservableSpec& spec);

/// Validate the defining invariants; throws numeric_error on breach.
void validate(const EnergyGrid& grid, const ObservableKernel& obs);
void validate(const EnergyGrid& grid, const StateFunctional& rho);

/// Mean value (rho|O) = sum w d O_diag + sum w w' conj(k) O_reg.
cplx pair(const EnergyGrid& grid, const StateFunctional& rho, const ObservableKernel& obs);

/// Pure-state functional of a sampled wave function; normalizes when the
/// norm deviates by more than 1e-8, rejects zero input.
StateFunctional from_wavefunction(const EnergyGrid& grid, const Eigen::VectorXcd& phi);

/// Packet preset -> normalized pure-state functional carrying its closed form.
StateFunctional from_packet(const EnergyGrid& grid, const WavePacket& packet);

/// Antiunitary time reversal: kernel conjugation, diagonal unchanged.
StateFunctional time_invert(const StateFunctional& rho);

/// Split into diagonal part (P rho) and kernel part (Q rho).
std::pair<StateFunctional, StateFunctional> decompose(const StateFunctional& rho);

} // namespace qscat

#endif
