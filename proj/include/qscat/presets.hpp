#ifndef QSCAT_PRESETS_HPP
#define QSCAT_PRESETS_HPP

#include <functional>
#include <string>
#include <vector>

#include "qscat/grid.hpp"

namespace qscat {

/// Closed-form form factor g(w) >= 0 with the analytic continuation G(z)
/// of |g(w)|^2 and its derivative. Continuations use the principal branch
/// (cut on the negative reals).
struct FormFactor {
    std::string name;
    std::function<double(double)> g;        // g(w) on the axis, real
    std::function<cplx(cplx)> g_cont;       // g(z)
    std::function<cplx(cplx)> g2_cont;      // G(z), continuation of |g|^2
    std::function<cplx(cplx)> dg2_cont;     // G'(z)
    std::vector<cplx> poles;                // poles of G off the cut
};

/// Closed-form wave packet with continuation and declared poles.
struct WavePacket {
    std::string name;
    std::function<double(double)> phi;      // unnormalized, real
    std::function<cplx(cplx)> phi_cont;
    std::vector<cplx> poles;
};

/// Closed-form observable: diagonal part plus regular kernel, each with a
/// continuation. Kernel continuation takes (z, z') with either argument
/// complex. Poles are listed per variable (the kernel factors are built so
/// that the same list covers both slots).
struct ObservableSpec {
    std::string name;
    std::function<double(double)> diag;                 // O_w, may be null
    std::function<cplx(cplx)> diag_cont;                // may be null
    std::function<cplx(double, double)> reg;            // O_ww', may be null
    std::function<cplx(cplx, cplx)> reg_cont;           // may be null
    std::vector<cplx> poles;
};

FormFactor form_factor_preset(const std::string& name, double scale = 1.0);
WavePacket wave_packet_preset(const std::string& name, double center = 2.0, double width = 1.0);
ObservableSpec observable_preset(const std::string& name);

/// The five smooth probes used by the default scenario, in order.
std::vector<ObservableSpec> default_probes();

} // namespace qscat

#endif
