#include "qscat/presets.hpp"

#include <cmath>

#include "qscat/errors.hpp"

namespace qscat {

FormFactor form_factor_preset(const std::string& name, double scale) {
    if (name == "sqrt_cauchy") {
        // |g|^2 = sqrt(w/s)/(1+w/s)^2, threshold ~ sqrt(w), decay ~ w^{-3/2}
        const double s = scale;
        FormFactor f;
        f.name = name;
        f.g = [s](double w) { return std::pow(w / s, 0.25) / (1.0 + w / s); };
        f.g_cont = [s](cplx z) { return std::pow(z / s, 0.25) / (1.0 + z / s); };
        f.g2_cont = [s](cplx z) { return std::sqrt(z / s) / ((1.0 + z / s) * (1.0 + z / s)); };
        f.dg2_cont = [s](cplx z) {
            cplx u = z / s;
            return (1.0 - 3.0 * u) / (2.0 * std::sqrt(u) * std::pow(1.0 + u, 3)) / s;
        };
        f.poles = {cplx(-scale, 0.0)};
        return f;
    }
    throw config_error("unknown form factor preset: " + name);
}

WavePacket wave_packet_preset(const std::string& name, double center, double width) {
    if (name == "threshold_packet") {
        // sqrt(w)/((w-c)^2 + b^2); poles at c +- i b
        const double c = center, b = width;
        WavePacket p;
        p.name = name;
        p.phi = [c, b](double w) { return std::sqrt(w) / ((w - c) * (w - c) + b * b); };
        p.phi_cont = [c, b](cplx z) { return std::sqrt(z) / ((z - c) * (z - c) + b * b); };
        p.poles = {cplx(c, b), cplx(c, -b)};
        return p;
    }
    throw config_error("unknown wave packet preset: " + name);
}

namespace {

ObservableSpec diag_lorentz(const std::string& name, double amp, double c, double b) {
    ObservableSpec o;
    o.name = name;
    o.diag = [amp, c, b](double w) { return amp / (1.0 + (w - c) * (w - c) / (b * b)); };
    o.diag_cont = [amp, c, b](cplx z) { return amp / (1.0 + (z - c) * (z - c) / (b * b)); };
    o.poles = {cplx(c, b), cplx(c, -b)};
    return o;
}

} // namespace

ObservableSpec observable_preset(const std::string& name) {
    if (name == "identity") {
        ObservableSpec o;
        o.name = name;
        o.diag = [](double) { return 1.0; };
        o.diag_cont = [](cplx) { return cplx(1.0); };
        return o;
    }
    if (name == "number_band") return diag_lorentz(name, 1.0, 3.0, 2.0);
    if (name == "band_high") return diag_lorentz(name, 2.0, 5.0, 3.0);
    if (name == "kernel_smooth") {
        // separable u(w)u(w'), u = w/(1+w)^3
        ObservableSpec o;
        o.name = name;
        auto u = [](cplx z) { return z / std::pow(1.0 + z, 3); };
        o.reg = [u](double w, double wp) { return u(cplx(w)).real() * u(cplx(wp)).real(); };
        o.reg_cont = [u](cplx z, cplx zp) { return u(z) * u(zp); };
        o.poles = {cplx(-1.0, 0.0)};
        return o;
    }
    if (name == "kernel_threshold") {
        // separable v(w)v(w'), v = sqrt(w)/(1+w)^2 (branch point only)
        ObservableSpec o;
        o.name = name;
        auto v = [](cplx z) { return std::sqrt(z) / ((1.0 + z) * (1.0 + z)); };
        o.reg = [v](double w, double wp) { return v(cplx(w)).real() * v(cplx(wp)).real(); };
        o.reg_cont = [v](cplx z, cplx zp) { return v(z) * v(zp); };
        o.poles = {cplx(-1.0, 0.0)};
        return o;
    }
    if (name == "mixed_band_kernel") {
        ObservableSpec o = diag_lorentz(name, 1.0, 4.0, 3.0);
        auto u = [](cplx z) { return z / std::pow(1.0 + z, 3); };
        auto v = [](cplx z) { return std::sqrt(z) / ((1.0 + z) * (1.0 + z)); };
        o.reg = [u, v](double w, double wp) {
            return 0.5 * (u(cplx(w)) * v(cplx(wp)) + v(cplx(w)) * u(cplx(wp))).real();
        };
        o.reg_cont = [u, v](cplx z, cplx zp) {
            return 0.5 * (u(z) * v(zp) + v(z) * u(zp));
        };
        o.poles.push_back(cplx(-1.0, 0.0));
        return o;
    }
    throw config_error("unknown observable preset: " + name);
}

std::vector<ObservableSpec> default_probes() {
    return {
        observable_preset("number_band"),
        observable_preset("band_high"),
        observable_preset("kernel_smooth"),
        observable_preset("kernel_threshold"),
        observable_preset("mixed_band_kernel"),
    };
}

} // namespace qscat
