#include "qscat/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qscat/errors.hpp"
#include "qscat/oracle.hpp"

namespace qscat {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// Gauss-Legendre points on a straight segment
void gl_segment(cplx za, cplx zb, int m, std::vector<cplx>& z, std::vector<cplx>& w) {
    EnergyGrid line(m, 1.0);  // nodes in (0,1), weights summing to 1
    for (int i = 0; i < m; ++i) {
        z.push_back(za + (zb - za) * line.node(i));
        w.push_back((zb - za) * line.weight(i));
    }
}

} // namespace

// ---------------------------------------------------------------------------
// real family

RealSpectralFamily::RealSpectralFamily(const ScatteringModel& model) : model_(&model) {}

double RealSpectralFamily::pair_diag(const ObservableKernel& obs, int node) const {
    return obs.diag[node];
}

double RealSpectralFamily::eigenvalue(int i, int j) const {
    return model_->grid().node(i) - model_->grid().node(j);
}

cplx RealSpectralFamily::pair_offdiag(const ObservableKernel& obs, int i, int j) const {
    const EnergyGrid& grid = model_->grid();
    const int n = grid.size();
    if (i == j) throw config_error("pair_offdiag: labels must differ");
    const Eigen::VectorXd& g = model_->g_samples();
    const Eigen::VectorXd& g2 = model_->g2_samples();
    const Eigen::VectorXcd& ep = model_->eta_plus();
    const double kap = model_->kappa();
    const Eigen::MatrixXd& V = grid.pv_weights();

    Eigen::VectorXcd og2 = obs.diag.cwiseProduct(g2).cast<cplx>();
    cplx jm = grid.principal_value_at_node(og2, i) + kI * kPi * og2[i];
    cplx jp = grid.principal_value_at_node(og2, j) - kI * kPi * og2[j];
    cplx N = kap * g[i] * g[j] *
             (obs.diag[i] / ep[j] - obs.diag[j] / std::conj(ep[i]) +
              kap * (jm - jp) / (std::conj(ep[i]) * ep[j]));
    cplx val = N / (grid.node(j) - grid.node(i));

    // regular kernel contribution
    cplx O = obs.reg(i, j);
    Eigen::VectorXcd colj(n), rowi(n);
    for (int k = 0; k < n; ++k) {
        colj[k] = g[k] * obs.reg(k, j);
        rowi[k] = g[k] * obs.reg(i, k);
    }
    cplx P1 = grid.principal_value_at_node(colj, i);
    cplx P2 = grid.principal_value_at_node(rowi, j);
    Eigen::VectorXcd p2col(n);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXcd rowk(n);
        for (int l = 0; l < n; ++l) rowk[l] = g[l] * obs.reg(k, l);
        p2col[k] = g[k] * grid.principal_value_at_node(rowk, j);
    }
    cplx PP = grid.principal_value_at_node(p2col, i);
    cplx kc = kap * g[i] / std::conj(ep[i]);
    cplx kt = kap * g[j] / ep[j];
    val += O + kc * (P1 + kI * kPi * g[i] * O) + kt * (P2 - kI * kPi * g[j] * O) +
           kc * kt * (PP - kI * kPi * g[j] * P1 + kI * kPi * g[i] * P2 +
                      kPi * kPi * g[i] * g[j] * O);
    return val;
}

double RealSpectralFamily::gram_offdiag_leakage(const std::vector<int>& nodes) const {
    const EnergyGrid& grid = model_->grid();
    double worst = 0.0;
    for (size_t a = 0; a < nodes.size(); ++a) {
        Eigen::VectorXcd va = ls_plus_vector(*model_, nodes[a]);
        for (size_t b = 0; b < nodes.size(); ++b) {
            if (a == b) continue;
            Eigen::VectorXcd vb = ls_plus_vector(*model_, nodes[b]);
            double leak = std::abs(va.dot(vb)) *
                          std::sqrt(grid.weight(nodes[a]) * grid.weight(nodes[b]));
            worst = std::max(worst, leak);
        }
    }
    return worst;
}

double RealSpectralFamily::reconstruction_defect(
    const ObservableKernel& obs, const std::vector<Eigen::VectorXcd>& probes) const {
    const EnergyGrid& grid = model_->grid();
    const int n = grid.size();
    Eigen::MatrixXcd Vp(n, n);
    for (int j = 0; j < n; ++j) Vp.col(j) = ls_plus_vector(*model_, j);
    Eigen::MatrixXcd M = plus_fluc_kernel(*model_, obs);
    Eigen::MatrixXcd coeff = (grid.weights() * grid.weights().transpose()).cast<cplx>()
                                 .cwiseProduct(M);
    coeff += Eigen::VectorXcd(grid.weights().cwiseProduct(obs.diag).cast<cplx>()).asDiagonal();
    Eigen::MatrixXcd rec = Vp * coeff * Vp.adjoint();

    DiscretizedSystem sys(*model_);
    Eigen::MatrixXcd target = sys.map_observable(obs);
    double worst = 0.0;
    double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
    for (const auto& u : probes)
        for (const auto& v : probes)
            worst = std::max(worst, std::abs((u.adjoint() * (rec - target) * v)(0, 0)) /
                                        (scale * u.norm() * v.norm()));
    return worst;
}

double RealSpectralFamily::reconstruction_defect_opnorm(const ObservableKernel& obs) const {
    const EnergyGrid& grid = model_->grid();
    const int n = grid.size();
    Eigen::MatrixXcd Vp(n, n);
    for (int j = 0; j < n; ++j) Vp.col(j) = ls_plus_vector(*model_, j);
    Eigen::MatrixXcd M = plus_fluc_kernel(*model_, obs);
    Eigen::MatrixXcd coeff = (grid.weights() * grid.weights().transpose()).cast<cplx>()
                                 .cwiseProduct(M);
    coeff += Eigen::VectorXcd(grid.weights().cwiseProduct(obs.diag).cast<cplx>()).asDiagonal();
    Eigen::MatrixXcd rec = Vp * coeff * Vp.adjoint();
    DiscretizedSystem sys(*model_);
    Eigen::MatrixXcd diff = rec - sys.map_observable(obs);
    diff = 0.5 * (diff + diff.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<IdentityRow> phi_energy_trace(const ScatteringModel& model,
                                          const std::vector<int>& diag_nodes,
                                          const std::vector<std::pair<int, int>>& offdiag_pairs) {
    const EnergyGrid& grid = model.grid();
    RealSpectralFamily fam(model);
    ObservableKernel H = hamiltonian_observable(model);
    ObservableKernel I;
    I.diag = Eigen::VectorXd::Ones(grid.size());
    I.reg = Eigen::MatrixXcd::Zero(grid.size(), grid.size());

    std::vector<IdentityRow> rows;
    for (int nd : diag_nodes) {
        double w = grid.node(nd);
        rows.push_back({"phi_diag_H_w=" + std::to_string(w), fam.pair_diag(H, nd), w,
                        std::abs(fam.pair_diag(H, nd) - w)});
        rows.push_back({"phi_diag_I_w=" + std::to_string(w), fam.pair_diag(I, nd), 1.0,
                        std::abs(fam.pair_diag(I, nd) - 1.0)});
    }
    Eigen::MatrixXcd MH = plus_fluc_kernel(model, H);
    Eigen::MatrixXcd MI = plus_fluc_kernel(model, I);
    for (auto [i, j] : offdiag_pairs) {
        std::ostringstream nm;
        nm << "phi_offdiag(" << grid.node(i) << "," << grid.node(j) << ")";
        rows.push_back({nm.str() + "_H", std::abs(MH(i, j)), 0.0, std::abs(MH(i, j))});
        rows.push_back({nm.str() + "_I", std::abs(MI(i, j)), 0.0, std::abs(MI(i, j))});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// deformation path

DeformationPath DeformationPath::build(const EnergyGrid& grid, double ray_depth,
                                       double strip_depth, int points_per_segment) {
    if (!(strip_depth > 0.0) || !(ray_depth > strip_depth))
        throw config_error("DeformationPath: need ray_depth > strip_depth > 0");
    DeformationPath p;
    p.ray_depth = ray_depth;
    p.strip_depth = strip_depth;
    p.points_per_segment = points_per_segment;
    const double omax = grid.omega_max();
    const double th0 = -3.0 * kPi / 4.0;
    const double th1 = std::asin(-strip_depth / ray_depth);
    cplx pray = ray_depth * std::polar(1.0, th0);
    gl_segment(cplx(0.0), pray, points_per_segment, p.z, p.w);
    {   // arc of radius ray_depth from th0 up to th1
        EnergyGrid line(points_per_segment, 1.0);
        for (int i = 0; i < points_per_segment; ++i) {
            double th = th0 + (th1 - th0) * line.node(i);
            cplx zz = ray_depth * std::polar(1.0, th);
            p.z.push_back(zz);
            p.w.push_back((th1 - th0) * line.weight(i) * kI * zz);
        }
    }
    double xjoin = ray_depth * std::cos(th1);
    gl_segment(cplx(xjoin, -strip_depth), cplx(omax, -strip_depth), points_per_segment, p.z, p.w);
    gl_segment(cplx(omax, -strip_depth), cplx(omax, 0.0), points_per_segment, p.z, p.w);
    return p;
}

bool DeformationPath::encloses_lower(cplx p, double omega_max) const {
    if (p.imag() >= 0.0) return false;
    double th = std::arg(p);
    if (th > -3.0 * kPi / 4.0 && std::abs(p) < ray_depth) return true;
    if (p.real() > 0.0 && p.real() < omega_max && p.imag() > -strip_depth) return true;
    return false;
}

bool DeformationPath::encloses_upper(cplx p, double omega_max) const {
    return encloses_lower(std::conj(p), omega_max);
}

// ---------------------------------------------------------------------------
// gamov family

ComplexSpectralFamily gamov_vectors(ScatteringModel& model) {
    return gamov_vectors(model, DeformationPath::build(model.grid()));
}

ComplexSpectralFamily free_complex_family(const EnergyGrid& grid) {
    ComplexSpectralFamily fam;
    fam.has_pole = false;
    fam.z0 = fam.z0_conj = 0.0;
    fam.residue = 0.0;
    fam.factor_f0 = fam.factor_f0_tilde = 0.0;
    fam.eta_II_deriv = 1.0;
    fam.path = DeformationPath::build(grid);
    return fam;
}

ComplexSpectralFamily gamov_vectors(ScatteringModel& model, const DeformationPath& path) {
    if (model.kappa() == 0.0) throw numeric_error("gamov_vectors: no resonance (kappa = 0)");
    if (!model.pole()) model.find_pole();
    const PoleInfo& p = *model.pole();
    ComplexSpectralFamily fam;
    fam.has_pole = true;
    fam.z0 = p.z0;
    fam.z0_conj = std::conj(p.z0);
    fam.residue = p.residue;
    fam.eta_II_deriv = p.eta_II_deriv;
    fam.factor_f0 = std::sqrt(-2.0 * kPi * kI * p.residue);
    fam.factor_f0_tilde = std::conj(fam.factor_f0);
    fam.decay_rate = 2.0 * std::abs(p.z0.imag());
    fam.path = path;
    if (!path.encloses_lower(p.z0, model.grid().omega_max()))
        throw config_error("gamov_vectors: deformation path does not enclose the resonance");
    return fam;
}

// ---------------------------------------------------------------------------
// continued machinery

namespace {

struct SideCache {
    std::vector<cplx> z;        // evaluation points
    std::vector<cplx> gc;       // g continuation
    std::vector<cplx> eta;      // first-sheet eta
    std::vector<cplx> eta_II;   // second sheet for this side
    std::vector<cplx> F;        // state factor
    std::vector<cplx> Od;       // observable diagonal continuation
    std::vector<cplx> jside;    // j_- (upper side) or j_+ (lower side)
};

struct ContinuedAssembler {
    const ScatteringModel* model;
    const ObservableKernel* obs;
    const StateFunctional* rho;
    double kap;
    Eigen::VectorXcd og2;      // O_diag g^2 samples
    Eigen::VectorXcd gphi;     // g phi samples
    bool has_reg;

    ContinuedAssembler(const ScatteringModel& m, const StateFunctional& r,
                       const ObservableKernel& o)
        : model(&m), obs(&o), rho(&r), kap(m.kappa()) {
        const EnergyGrid& grid = m.grid();
        const int n = grid.size();
        og2 = obs->diag.cwiseProduct(m.g2_samples()).cast<cplx>();
        gphi.resize(n);
        for (int i = 0; i < n; ++i)
            gphi[i] = m.g_samples()[i] * rho->packet->phi(grid.node(i));
        has_reg = obs->spec && obs->spec->reg_cont != nullptr;
    }

    cplx odiag_cont(cplx z) const {
        if (obs->spec && obs->spec->diag_cont) return obs->spec->diag_cont(z);
        return 0.0;
    }
    cplx oreg_cont(cplx z, cplx zp) const {
        return has_reg ? obs->spec->reg_cont(z, zp) : cplx(0.0);
    }

    // state factor: phi_c + kappa g_c C[g phi]/eta, the continued transform
    cplx state_factor(cplx z) const {
        cplx e = model->eta(z);
        return rho->packet->phi_cont(z) +
               kap * model->form_factor().g_cont(z) * model->cauchy_transform(gphi, z) / e;
    }

    SideCache make_cache(const std::vector<cplx>& pts, bool upper) const {
        SideCache c;
        c.z = pts;
        const auto& ff = model->form_factor();
        for (cplx z : pts) {
            c.gc.push_back(ff.g_cont(z));
            c.eta.push_back(model->eta(z));
            c.eta_II.push_back(upper ? model->eta_second_sheet_upper(z)
                                     : model->eta_second_sheet(z));
            c.F.push_back(state_factor(z));
            c.Od.push_back(odiag_cont(z));
            cplx T = model->cauchy_transform(og2, z);
            cplx jump = 2.0 * kPi * kI * c.Od.back() * ff.g2_cont(z);
            c.jside.push_back(upper ? T + jump : T - jump);
        }
        return c;
    }

    // decomposition M = alpha + beta/etaII_up(z) + gamma/etaII_lo(z')
    //                 + delta/(etaII_up(z) etaII_lo(z'))
    void parts(const SideCache& up, int i, const SideCache& lo, int j,
               const cplx* tg1, const cplx* tg2, const cplx* tt,
               cplx& alpha, cplx& beta, cplx& gamma, cplx& delta) const {
        cplx z = up.z[i], zp = lo.z[j];
        cplx pref = kap * up.gc[i] * lo.gc[j] / (zp - z);
        beta = pref * (-lo.Od[j]);
        gamma = pref * up.Od[i];
        delta = pref * kap * (up.jside[i] - lo.jside[j]);
        alpha = 0.0;
        if (has_reg) {
            cplx O12 = oreg_cont(z, zp);
            cplx A = *tg1 + 2.0 * kPi * kI * up.gc[i] * O12;
            cplx B = *tg2 - 2.0 * kPi * kI * lo.gc[j] * O12;
            cplx D = *tt + 2.0 * kPi * kI * up.gc[i] * (*tg2) -
                     2.0 * kPi * kI * lo.gc[j] * (*tg1) +
                     4.0 * kPi * kPi * up.gc[i] * lo.gc[j] * O12;
            alpha += O12;
            beta += kap * up.gc[i] * A;
            gamma += kap * lo.gc[j] * B;
            delta += kap * kap * up.gc[i] * lo.gc[j] * D;
        }
    }
};

} // namespace

void check_path_admissible(const ScatteringModel& model, const ComplexSpectralFamily& family,
                           const StateFunctional& rho0, const ObservableKernel& obs) {
    if (!rho0.continuable())
        throw analyticity_error("complex evolution: state carries no analytic continuation "
                                "(sampled states cannot be deformed)");
    if (obs.spec && !obs.spec->diag_cont && obs.diag.cwiseAbs().maxCoeff() > 0.0)
        throw analyticity_error("complex evolution: observable diagonal has no continuation");
    if (obs.spec && !obs.spec->reg_cont && obs.reg.cwiseAbs().maxCoeff() > 0.0)
        throw analyticity_error("complex evolution: observable kernel has no continuation");
    if (!obs.spec)
        throw analyticity_error("complex evolution: sampled observable has no continuation");

    const double omax = model.grid().omega_max();
    std::vector<std::pair<std::string, cplx>> poles;
    for (cplx p : rho0.packet->poles) poles.push_back({"state", p});
    for (cplx p : obs.spec->poles) poles.push_back({"observable", p});
    for (cplx p : model.form_factor().poles) poles.push_back({"form factor", p});
    std::ostringstream bad;
    for (auto& [who, p] : poles) {
        if (family.path.encloses_lower(p, omax) || family.path.encloses_upper(p, omax))
            bad << " " << who << " pole at (" << p.real() << "," << p.imag() << ")";
        for (cplx zp : family.path.z)
            if (std::abs(zp - p) < 0.1 || std::abs(std::conj(zp) - p) < 0.1) {
                bad << " " << who << " pole near path at (" << p.real() << "," << p.imag() << ")";
                break;
            }
    }
    if (!bad.str().empty())
        throw analyticity_error("complex evolution: deformation region hits" + bad.str());
}

ComplexEvolutionPlan::ComplexEvolutionPlan(const ScatteringModel& model,
                                           const ComplexSpectralFamily& family,
                                           const StateFunctional& rho0,
                                           const ObservableKernel& obs)
    : model_(&model), family_(family) {
    check_path_admissible(model, family, rho0, obs);
    const EnergyGrid& grid = model.grid();
    const int n = grid.size();

    PlusRepresentation rep = to_plus_representation(model, rho0);
    inv_term_ = grid.integrate(Eigen::VectorXd(rep.c_diag.cwiseProduct(obs.diag)));

    zl_ = family.path.z;
    wl_ = family.path.w;
    for (cplx z : zl_) zu_.push_back(std::conj(z));
    for (cplx w : wl_) wu_.push_back(std::conj(w));
    const int m = static_cast<int>(zl_.size());

    ContinuedAssembler as(model, rho0, obs);
    SideCache up = as.make_cache(zu_, true);
    SideCache lo = as.make_cache(zl_, false);

    // kernel transforms on path x path, assembled as matrix products
    Eigen::MatrixXcd TG1, TG2, TT;
    Eigen::MatrixXcd OU, OL;    // kernel continued in one slot
    Eigen::VectorXcd tg1_up(m), tg2_up(m), tg1_lo(m), tg2_lo(m);
    cplx tg1_pp = 0, tg2_pp = 0, tt_pp = 0;
    Eigen::VectorXcd tt_up(m), tt_lo(m);
    if (as.has_reg) {
        Eigen::MatrixXcd CU(n, m), CL(n, m);
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < m; ++j) {
                double wg = grid.weight(k) * model.g_samples()[k];
                CU(k, j) = wg / (zu_[j] - grid.node(k));
                CL(k, j) = wg / (zl_[j] - grid.node(k));
            }
        OU.resize(m, n);  // O(z_up, w_k)
        OL.resize(n, m);  // O(w_k, z_lo)
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < n; ++k) OU(i, k) = as.oreg_cont(zu_[i], cplx(grid.node(k)));
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < m; ++j) OL(k, j) = as.oreg_cont(cplx(grid.node(k)), zl_[j]);
        TG1 = CU.transpose() * OL;          // T[g O(., z')](z)
        TG2 = OU * CL;                      // T[g O(z, .)](z')
        TT = CU.transpose() * obs.reg * CL; // double transform

        // pole-slot versions
        if (family.has_pole) {
            Eigen::VectorXcd cP(n), cPp(n), OUp(n), OLp(n);
            for (int k = 0; k < n; ++k) {
                double wg = grid.weight(k) * model.g_samples()[k];
                cP[k] = wg / (family.z0_conj - grid.node(k));
                cPp[k] = wg / (family.z0 - grid.node(k));
                OUp[k] = as.oreg_cont(family.z0_conj, cplx(grid.node(k)));
                OLp[k] = as.oreg_cont(cplx(grid.node(k)), family.z0);
            }
            Eigen::RowVectorXcd q1 = cP.transpose() * obs.reg;   // for tt rows
            Eigen::VectorXcd q2 = obs.reg * cPp;
            tg1_up = (cP.transpose() * OL).transpose();          // T[g O(., z_j)](z0*)
            tg2_up = (OUp.transpose() * CL).transpose();         // T[g O(z0*, .)](z_j)
            tt_up = (q1 * CL).transpose();
            tg1_lo = (CU.transpose() * OLp);                     // T[g O(., z0)](z_i)
            tg2_lo = OU * cPp;                                   // T[g O(z_i, .)](z0)
            tt_lo = CU.transpose() * q2;
            tg1_pp = (cP.transpose() * OLp).value();
            tg2_pp = (OUp.transpose() * cPp).value();
            tt_pp = (q1 * cPp).value();
        }
    }

    // background x background
    bb_.resize(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            cplx al, be, ga, de;
            const cplx* t1 = as.has_reg ? &TG1(i, j) : nullptr;
            const cplx* t2 = as.has_reg ? &TG2(i, j) : nullptr;
            const cplx* t3 = as.has_reg ? &TT(i, j) : nullptr;
            as.parts(up, i, lo, j, t1, t2, t3, al, be, ga, de);
            cplx M = al + be / up.eta_II[i] + ga / lo.eta_II[j] +
                     de / (up.eta_II[i] * lo.eta_II[j]);
            bb_(i, j) = wu_[i] * wl_[j] * up.F[i] * lo.F[j] * M;
        }
    }

    gb_ = Eigen::VectorXcd::Zero(m);
    bg_ = Eigen::VectorXcd::Zero(m);
    gg_ = 0.0;
    left_residuals_ = {0.0, 0.0, 0.0, 0.0};
    if (family.has_pole) {
        SideCache upPole = as.make_cache({family.z0_conj}, true);
        SideCache loPole = as.make_cache({family.z0}, false);
        const cplx dbar = std::conj(family.eta_II_deriv);  // etaII_upper'(z0*)
        const cplx dlo = family.eta_II_deriv;
        const double psi_norm_single = 2.0 * kPi / std::abs(family.factor_f0);

        // residue at z = z0* against the lower background
        double psi0w = 0.0;
        for (int j = 0; j < m; ++j) {
            cplx al, be, ga, de;
            const cplx* t1 = as.has_reg ? &tg1_up[j] : nullptr;
            const cplx* t2 = as.has_reg ? &tg2_up[j] : nullptr;
            const cplx* t3 = as.has_reg ? &tt_up[j] : nullptr;
            as.parts(upPole, 0, lo, j, t1, t2, t3, al, be, ga, de);
            cplx resM = (be + de / lo.eta_II[j]) / dbar;
            gb_[j] = 2.0 * kPi * kI * wl_[j] * upPole.F[0] * lo.F[j] * resM;
            psi0w = std::max(psi0w, std::abs(resM) * psi_norm_single);
        }
        // residue at z' = z0 against the upper background
        double psiw0 = 0.0;
        for (int i = 0; i < m; ++i) {
            cplx al, be, ga, de;
            const cplx* t1 = as.has_reg ? &tg1_lo[i] : nullptr;
            const cplx* t2 = as.has_reg ? &tg2_lo[i] : nullptr;
            const cplx* t3 = as.has_reg ? &tt_lo[i] : nullptr;
            as.parts(up, i, loPole, 0, t1, t2, t3, al, be, ga, de);
            cplx resM = (ga + de / up.eta_II[i]) / dlo;
            bg_[i] = -2.0 * kPi * kI * wu_[i] * up.F[i] * loPole.F[0] * resM;
            psiw0 = std::max(psiw0, std::abs(resM) * psi_norm_single);
        }
        // double residue
        {
            cplx al, be, ga, de;
            const cplx* t1 = as.has_reg ? &tg1_pp : nullptr;
            const cplx* t2 = as.has_reg ? &tg2_pp : nullptr;
            const cplx* t3 = as.has_reg ? &tt_pp : nullptr;
            as.parts(upPole, 0, loPole, 0, t1, t2, t3, al, be, ga, de);
            cplx resMM = de / (dbar * dlo);
            gg_ = 4.0 * kPi * kPi * upPole.F[0] * loPole.F[0] * resMM;
            left_residuals_[0] = 4.0 * kPi * kPi * std::abs(resMM) /
                                 (2.0 * kPi * std::abs(family.residue));
        }
        left_residuals_[1] = psi0w;
        left_residuals_[2] = psiw0;
    }
    // background-background left element is M itself
    double psiww = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            cplx denom = wu_[i] * wl_[j] * up.F[i] * lo.F[j];
            if (std::abs(denom) > 1e-14) psiww = std::max(psiww, std::abs(bb_(i, j) / denom));
        }
    left_residuals_[3] = psiww;
}

ComplexEvolutionTerms ComplexEvolutionPlan::evaluate(double t) const {
    const EnergyGrid& grid = model_->grid();
    if (t < 0.0 || t > grid.t_max())
        throw config_error("complex evolution: t outside (0, T_max]");
    const int m = static_cast<int>(zl_.size());
    ComplexEvolutionTerms out;
    out.t = t;
    out.invariant = inv_term_;
    Eigen::VectorXcd eu(m), el(m);
    for (int i = 0; i < m; ++i) {
        eu[i] = std::exp(kI * zu_[i] * t);
        el[i] = std::exp(-kI * zl_[i] * t);
    }
    out.background = (eu.transpose() * bb_ * el).value();
    cplx e0u = std::exp(kI * family_.z0_conj * t);
    cplx e0l = std::exp(-kI * family_.z0 * t);
    out.mixed_upper = e0u * (el.transpose() * gb_).value();
    out.mixed_lower = e0l * (eu.transpose() * bg_).value();
    out.gamov = e0u * e0l * gg_;
    return out;
}

double ComplexEvolutionPlan::gamov_amplitude() const { return std::abs(gg_); }

std::array<double, 4> ComplexEvolutionPlan::left_family_residuals() const {
    return left_residuals_;
}

} // namespace qscat
