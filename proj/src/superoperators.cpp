#include "qscat/superoperators.hpp"

#include "qscat/errors.hpp"

namespace qscat {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

FiniteLiouvillian::FiniteLiouvillian(Eigen::MatrixXcd hamiltonian) : H_(std::move(hamiltonian)) {
    const int n = static_cast<int>(H_.rows());
    if (H_.cols() != n) throw numeric_error("FiniteLiouvillian: H must be square");
    if ((H_ - H_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, H_.cwiseAbs().maxCoeff()))
        throw numeric_error("FiniteLiouvillian: H must be Hermitian");
    if (n > 40) throw numeric_error("FiniteLiouvillian: dense superoperator limited to n <= 40");
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    L_ = kron(I, H_) - kron(H_.transpose(), I);
}

Eigen::MatrixXcd FiniteLiouvillian::apply(const Eigen::MatrixXcd& O) const {
    if (O.rows() != dim() || O.cols() != dim())
        throw numeric_error("FiniteLiouvillian: shape mismatch");
    return H_ * O - O * H_;
}

ProjectorPair ProjectorPair::diagonal(int n) {
    ProjectorPair pr;
    pr.P.setZero(n * n, n * n);
    for (int i = 0; i < n; ++i) pr.P(i + n * i, i + n * i) = 1.0;
    pr.Q = Eigen::MatrixXd::Identity(n * n, n * n) - pr.P;
    return pr;
}

Eigen::MatrixXcd apply_ldag(const FiniteLiouvillian& L, const Eigen::MatrixXcd& O) {
    return L.apply(O);
}

namespace {

Eigen::VectorXcd vec(const Eigen::MatrixXcd& O) {
    return Eigen::Map<const Eigen::VectorXcd>(O.data(), O.size());
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int n) {
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n);
}

} // namespace

Eigen::MatrixXcd apply_collision(const FiniteLiouvillian& L, const ProjectorPair& pr,
                                 cplx z, const Eigen::MatrixXcd& probe) {
    const int n = L.dim();
    const int N = n * n;
    if (z.imag() == 0.0) throw numeric_error("apply_collision: z must be off the real axis");
    Eigen::MatrixXcd Lm = L.matrix();
    Eigen::MatrixXcd P = pr.P.cast<cplx>(), Q = pr.Q.cast<cplx>();
    Eigen::MatrixXcd QLQ = Q * Lm * Q;
    Eigen::MatrixXcd A = QLQ + z * Eigen::MatrixXcd::Identity(N, N);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eigen::VectorXcd x = Q * (Lm * (P * vec(probe)));
    x = lu.solve(x);
    Eigen::VectorXcd y = -(P * (Lm * (Q * x)));
    return unvec(y, n);
}

double verify_resolvent_partition(const FiniteLiouvillian& L, const ProjectorPair& pr, cplx z) {
    const int n = L.dim();
    const int N = n * n;
    if (z.imag() == 0.0)
        throw numeric_error("verify_resolvent_partition: z must be off the real axis");
    Eigen::MatrixXcd Lm = L.matrix();
    Eigen::MatrixXcd P = pr.P.cast<cplx>(), Q = pr.Q.cast<cplx>();
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(N, N);

    Eigen::MatrixXcd QLQ = Q * Lm * Q;
    Eigen::PartialPivLU<Eigen::MatrixXcd> luQ(QLQ - z * I);
    // conditioning report via the smallest pivot scale
    double pivot = luQ.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (pivot < 1e-13 * std::max(1.0, Lm.cwiseAbs().maxCoeff()))
        throw numeric_error("verify_resolvent_partition: (QLQ - z) ill-conditioned, pivot " +
                            std::to_string(pivot));

    Eigen::MatrixXcd RQ = luQ.solve(I);          // (QLQ - z)^{-1} on the full space
    Eigen::MatrixXcd QLP = Q * Lm * P;
    Eigen::MatrixXcd PLQ = P * Lm * Q;
    Eigen::MatrixXcd Psi = -PLQ * RQ * QLP;      // collision
    Eigen::MatrixXcd C = -RQ * QLP;              // creation
    Eigen::MatrixXcd D = -PLQ * RQ;              // destruction

    Eigen::MatrixXcd M = P * Lm * P + Psi - z * I;
    Eigen::PartialPivLU<Eigen::MatrixXcd> luM(M);
    Eigen::MatrixXcd RM = luM.solve(I);

    Eigen::MatrixXcd rhs = (P + C) * RM * (P + D) + RQ * Q;
    Eigen::PartialPivLU<Eigen::MatrixXcd> luL(Lm - z * I);
    Eigen::MatrixXcd lhs = luL.solve(I);
    return (rhs - lhs).cwiseAbs().maxCoeff();
}

} // namespace qscat
