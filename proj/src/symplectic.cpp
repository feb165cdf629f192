#include "polaron/symplectic.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace polaron {

using cplx = std::complex<double>;

std::array<double, 4> verify_symplectic(const SymplecticPair& p, double tol,
                                        bool* in_sp) {
    const auto& S = p.S;
    const auto& T = p.T;
    if (S.rows() != S.cols() || T.rows() != T.cols() || S.rows() != T.rows())
        throw Error(Error::DimensionMismatch, "verify_symplectic: block size mismatch");
    const int M = static_cast<int>(S.rows());
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(M, M);
    std::array<double, 4> r;
    r[0] = (S.adjoint() * S - T.adjoint() * T - I).norm();
    r[1] = (S.transpose() * T - T.transpose() * S).norm();
    r[2] = (S * S.adjoint() - (T * T.adjoint()).conjugate() - I).norm();
    r[3] = (T * S.adjoint() - (S * T.adjoint()).conjugate()).norm();
    if (in_sp) *in_sp = r[0] <= tol && r[1] <= tol && r[2] <= tol && r[3] <= tol;
    return r;
}

double spectral_norm(const Eigen::MatrixXcd& A) {
    const int n = static_cast<int>(A.cols());
    Eigen::MatrixXcd G = A.adjoint() * A;  // hermitian PSD
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n) / std::sqrt(double(n));
    double lam = 0;
    for (int it = 0; it < 20000; ++it) {
        Eigen::VectorXcd w = G * v;
        double nw = w.norm();
        if (nw == 0) return 0;
        double lam_new = std::real(v.dot(w));
        w /= nw;
        if (it > 2 && std::abs(lam_new - lam) <= 1e-14 * std::abs(lam_new) + 1e-300)
            return std::sqrt(std::max(lam_new, 0.0));
        lam = lam_new;
        v = w;
    }
    return std::sqrt(std::max(lam, 0.0));
}

BogoliubovCoeffs bogoliubov_coeffs(const SymplecticPair& p) {
    bool ok = false;
    verify_symplectic(p, 1e-8, &ok);
    if (!ok) throw Error(Error::Precondition, "bogoliubov_coeffs: pair not symplectic");
    const int M = static_cast<int>(p.S.rows());
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(p.S);
    if (!lu.isInvertible())
        throw Error(Error::SingularS, "bogoliubov_coeffs: S not invertible");
    Eigen::MatrixXcd Sinv = lu.inverse();
    BogoliubovCoeffs c;
    c.K1 = p.T * Sinv;
    c.K2 = Eigen::MatrixXcd::Identity(M, M) - Sinv.transpose();
    c.K3 = -Sinv * p.T.conjugate();
    c.norm_K1 = spectral_norm(c.K1);
    if (c.norm_K1 >= 1.0)
        throw Error(Error::NormExceedsOne, "bogoliubov_coeffs: ||K1|| >= 1");
    Eigen::MatrixXcd G =
        Eigen::MatrixXcd::Identity(M, M) - c.K1.adjoint() * c.K1;
    c.det_factor = std::pow(std::real(G.determinant()), 0.25);
    return c;
}

BogoliubovData BogoliubovData::make(const SymplecticPair& p,
                                    const Eigen::VectorXcd& L) {
    BogoliubovData d;
    d.pair = p;
    d.L = L;
    d.xi = p.T * L - p.S.conjugate() * L.conjugate();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(p.S);
    if (!lu.isInvertible())
        throw Error(Error::SingularS, "BogoliubovData: S not invertible");
    d.K = p.T * lu.inverse();
    return d;
}

FockOperator b_ladder(const FockSpace& sp, const SymplecticPair& p,
                      const Eigen::VectorXcd& f, Ladder kind) {
    if (kind == Ladder::Annihilate)
        return ladder(sp, (p.T * f).eval(), Ladder::Create) +
               ladder(sp, (p.S * f).eval(), Ladder::Annihilate);
    return ladder(sp, (p.S.conjugate() * f).eval(), Ladder::Create) +
           ladder(sp, (p.T.conjugate() * f).eval(), Ladder::Annihilate);
}

FockOperator delta_quadratic(const FockSpace& sp, const Eigen::MatrixXcd& K,
                             Ladder kind) {
    const int M = sp.modes;
    if (K.rows() != M || K.cols() != M)
        throw Error(Error::DimensionMismatch, "delta_quadratic: size mismatch");
    FockOperator out = FockOperator::Zero(sp.dim, sp.dim);
    std::vector<FockOperator> one(M);
    for (int i = 0; i < M; ++i) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(M);
        e[i] = 1;
        one[i] = ladder(sp, e, kind);
    }
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            if (K(i, j) != cplx(0, 0)) out += K(i, j) * (one[i] * one[j]);
    return out;
}

FockOperator mult_second_quantization(const FockSpace& sp,
                                      const Eigen::MatrixXcd& B) {
    const int M = sp.modes;
    if (B.rows() != M || B.cols() != M)
        throw Error(Error::DimensionMismatch, "mult_second_quantization: size");
    std::vector<FockOperator> crB(M);
    for (int i = 0; i < M; ++i)
        crB[i] = ladder(sp, Eigen::VectorXcd(B.col(i)), Ladder::Create);
    FockOperator G = FockOperator::Zero(sp.dim, sp.dim);
    G(0, 0) = 1.0;  // vacuum column (basis is graded: vacuum first)
    for (int col = 1; col < sp.dim; ++col) {
        const auto& occ = sp.basis[col];
        int i = 0;
        while (occ[i] == 0) ++i;
        std::vector<int> lower = occ;
        lower[i] -= 1;
        int prev = sp.index.at(lower);
        G.col(col) = (crB[i] * G.col(prev)) / std::sqrt(double(occ[i]));
    }
    return G;
}

namespace {

// exp(W) for W that raises/lowers total quanta by 2: nilpotent on the truncation
FockOperator exp_nilpotent(const FockSpace& sp, const FockOperator& W) {
    FockOperator out = FockOperator::Identity(sp.dim, sp.dim);
    FockOperator pw = FockOperator::Identity(sp.dim, sp.dim);
    const int depth = sp.cap / 2 + 1;
    for (int k = 1; k <= depth; ++k) {
        pw = (W * pw) / double(k);
        if (pw.norm() == 0) break;
        out += pw;
    }
    return out;
}

}  // namespace

FockOperator intertwiner(const FockSpace& sp, const SymplecticPair& p) {
    BogoliubovCoeffs c = bogoliubov_coeffs(p);
    const int M = sp.modes;
    FockOperator e1 = exp_nilpotent(
        sp, FockOperator(-0.5 * delta_quadratic(sp, c.K1, Ladder::Create)));
    FockOperator g =
        mult_second_quantization(sp, Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(M, M) - c.K2));
    FockOperator e2 = exp_nilpotent(
        sp, FockOperator(-0.5 * delta_quadratic(sp, c.K3, Ladder::Annihilate)));
    return c.det_factor * (e1 * (g * e2));
}

double intertwine_check(const FockSpace& sp, const SymplecticPair& p,
                        const Eigen::VectorXcd& f, int probe_cap) {
    FockOperator U = intertwiner(sp, p);
    FockOperator lhs = U * ladder(sp, f, Ladder::Create);
    FockOperator rhs = b_ladder(sp, p, f, Ladder::Create) * U;
    // the top layer absorbs the silent creation drops, so the identity is only
    // faithful below it; measure the residual there
    FockOperator diff = sector_leq(sp, sp.cap - 1) * (lhs - rhs);
    double worst = 0;
    for (int i = 0; i < sp.dim; ++i)
        if (sp.total(i) <= probe_cap) worst = std::max(worst, diff.col(i).norm());
    return worst;
}

FockOperator displacement(const FockSpace& sp, const SymplecticPair& p,
                          const Eigen::VectorXcd& L) {
    bool ok = false;
    verify_symplectic(p, 1e-8, &ok);
    if (!ok) throw Error(Error::Precondition, "displacement: pair not symplectic");
    FockOperator G = b_ladder(sp, p, L, Ladder::Annihilate) -
                     b_ladder(sp, p, Eigen::VectorXcd(L.conjugate()), Ladder::Create);
    return G.exp();
}

OverlapResult vacuum_overlaps(const FockSpace& sp, const BogoliubovData& data,
                              const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
    FockOperator U = intertwiner(sp, data.pair);
    FockOperator D = displacement(sp, data.pair, data.L);
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(sp.dim);
    vac[sp.vacuum()] = 1.0;
    Eigen::VectorXcd phi = D * (U * vac);
    cplx J = phi[sp.vacuum()];
    if (std::abs(J) < 1e-12)
        throw Error(Error::VacuumOverlapZero, "vacuum_overlaps: vanishing overlap");
    FockOperator crf = ladder(sp, f, Ladder::Create);
    FockOperator crg = ladder(sp, g, Ladder::Create);
    OverlapResult out;
    out.r1 = (crf * vac).dot(phi) / J;
    out.r2 = (crf * (crg * vac)).dot(phi) / J;
    auto ip = [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
        return a.dot(b);  // (a, b) = sum conj(a_i) b_i
    };
    const auto& xi = data.xi;
    const auto& K = data.K;
    Eigen::VectorXcd Kbf = K.conjugate() * f;
    Eigen::VectorXcd Kbg = K.conjugate() * g;
    Eigen::VectorXcd xib = xi.conjugate();
    cplx fx = ip(f, xi), gx = ip(g, xi);
    cplx fk = ip(Kbf, xib), gk = ip(Kbg, xib);
    out.closed1 = fx + fk;
    out.closed2 = fx * gx + gx * fk + fx * gk + gk * fk - ip(f, K * g.conjugate());
    out.res1 = std::abs(out.r1 - out.closed1);
    out.res2 = std::abs(out.r2 - out.closed2);
    return out;
}

SymplecticPair sp_flow(const Eigen::MatrixXcd& Sg, const Eigen::MatrixXcd& Tg,
                       double t) {
    const int M = static_cast<int>(Sg.rows());
    if ((Sg + Sg.adjoint()).norm() > 1e-10 || (Tg - Tg.transpose()).norm() > 1e-10)
        throw Error(Error::GeneratorNotInSp2,
                    "sp_flow: need Sg anti-hermitian and Tg symmetric");
    Eigen::MatrixXcd A(2 * M, 2 * M);
    A.topLeftCorner(M, M) = Sg;
    A.topRightCorner(M, M) = Tg.conjugate();
    A.bottomLeftCorner(M, M) = Tg;
    A.bottomRightCorner(M, M) = Sg.conjugate();
    Eigen::MatrixXcd E = (t * A).exp();
    SymplecticPair p;
    p.S = E.topLeftCorner(M, M);
    p.T = E.bottomLeftCorner(M, M);
    return p;
}

namespace {

double tau_at(const Eigen::MatrixXcd& Sg, const Eigen::MatrixXcd& Tg, double r) {
    SymplecticPair p = sp_flow(Sg, Tg, r);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(p.S);
    if (!lu.isInvertible())
        throw Error(Error::SingularS, "local_exponent: S_r singular");
    return 0.5 * std::imag((Tg.adjoint() * p.T * lu.inverse()).trace());
}

double theta_trap(const Eigen::MatrixXcd& Sg, const Eigen::MatrixXcd& Tg, double t,
                  int panels) {
    double h = t / panels, sum = 0.5 * (tau_at(Sg, Tg, 0) + tau_at(Sg, Tg, t));
    for (int i = 1; i < panels; ++i) sum += tau_at(Sg, Tg, i * h);
    return sum * h;
}

double theta_of(const Eigen::MatrixXcd& Sg, const Eigen::MatrixXcd& Tg, double t,
                int grid) {
    if (t == 0) return 0;
    double t1 = theta_trap(Sg, Tg, t, grid);
    double t2 = theta_trap(Sg, Tg, t, 2 * grid);
    return t2 + (t2 - t1) / 3.0;  // Richardson step for the trapezoid rule
}

}  // namespace

LocalExponent local_exponent(const Eigen::MatrixXcd& Sg, const Eigen::MatrixXcd& Tg,
                             double t, int grid) {
    LocalExponent out;
    out.tau.resize(grid + 1);
    for (int i = 0; i <= grid; ++i) out.tau[i] = tau_at(Sg, Tg, t * i / grid);
    out.theta_t = theta_of(Sg, Tg, t, grid);
    return out;
}

double local_exponent_rho(const Eigen::MatrixXcd& Sg, const Eigen::MatrixXcd& Tg,
                          double t, double s, int grid) {
    return theta_of(Sg, Tg, t, grid) + theta_of(Sg, Tg, s, grid) -
           theta_of(Sg, Tg, t + s, grid);
}

DetIdentity det_identity(const FockSpace& sp, const Eigen::MatrixXcd& K, double z) {
    DetIdentity out;
    FockOperator D = delta_quadratic(sp, K, Ladder::Create);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sp.dim);
    v[sp.vacuum()] = 1.0;
    double sum = 0, fact = 1, pow2 = 1, zp = 1;
    const int N = sp.cap / 2;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) {
            v = D * v;
            fact *= n;
            pow2 *= 2;
            zp *= z;
        }
        double an = v.squaredNorm() / (pow2 * fact * pow2 * fact);
        sum += an * zp;
        out.partial_sums.push_back(sum);
    }
    const int M = sp.modes;
    Eigen::MatrixXcd G =
        Eigen::MatrixXcd::Identity(M, M) - z * K.adjoint() * K;
    out.target = 1.0 / std::sqrt(std::real(G.determinant()));
    return out;
}

}  // namespace polaron
