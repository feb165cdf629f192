#include "polaron/fock.hpp"

#include <cmath>

namespace polaron {

namespace {

void enumerate(int M, int total, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == M - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int n = total; n >= 0; --n) {  // lexicographic within fixed total
        cur.push_back(n);
        enumerate(M, total - n, cur, out);
        cur.pop_back();
    }
}

}  // namespace

FockSpace FockSpace::make(int M, int N_max) {
    if (M < 1 || N_max < 1)
        throw Error(Error::InvalidInput, "FockSpace: need M >= 1, N_max >= 1");
    FockSpace sp;
    sp.modes = M;
    sp.cap = N_max;
    std::vector<int> cur;
    for (int n = 0; n <= N_max; ++n) enumerate(M, n, cur, sp.basis);
    sp.dim = static_cast<int>(sp.basis.size());
    for (int i = 0; i < sp.dim; ++i) sp.index[sp.basis[i]] = i;
    return sp;
}

int FockSpace::total(int i) const {
    int s = 0;
    for (int n : basis[i]) s += n;
    return s;
}

FockOperator ladder(const FockSpace& sp, const Eigen::VectorXcd& f, Ladder kind) {
    if (f.size() != sp.modes)
        throw Error(Error::DimensionMismatch, "ladder: mode-vector length mismatch");
    FockOperator A = FockOperator::Zero(sp.dim, sp.dim);
    for (int col = 0; col < sp.dim; ++col) {
        const auto& occ = sp.basis[col];
        int tot = sp.total(col);
        for (int m = 0; m < sp.modes; ++m) {
            if (f[m] == std::complex<double>(0, 0)) continue;
            if (kind == Ladder::Create) {
                if (tot + 1 > sp.cap) continue;  // truncation: drop
                std::vector<int> up = occ;
                up[m] += 1;
                int row = sp.index.at(up);
                A(row, col) += f[m] * std::sqrt(double(occ[m] + 1));
            } else {
                if (occ[m] == 0) continue;
                std::vector<int> dn = occ;
                dn[m] -= 1;
                int row = sp.index.at(dn);
                A(row, col) += f[m] * std::sqrt(double(occ[m]));
            }
        }
    }
    return A;
}

FockOperator dgamma(const FockSpace& sp, const Eigen::MatrixXcd& h) {
    if (h.rows() != sp.modes || h.cols() != sp.modes)
        throw Error(Error::DimensionMismatch, "dgamma: matrix size mismatch");
    if ((h - h.adjoint()).norm() > 1e-12)
        throw Error(Error::NotSelfAdjoint, "dgamma: h not self-adjoint");
    FockOperator out = FockOperator::Zero(sp.dim, sp.dim);
    // number-conserving: act directly on occupation tuples
    for (int col = 0; col < sp.dim; ++col) {
        const auto& occ = sp.basis[col];
        for (int j = 0; j < sp.modes; ++j) {
            if (occ[j] == 0) continue;
            for (int i = 0; i < sp.modes; ++i) {
                if (h(i, j) == std::complex<double>(0, 0)) continue;
                std::vector<int> t = occ;
                t[j] -= 1;
                double amp = std::sqrt(double(occ[j]));
                t[i] += 1;
                amp *= std::sqrt(double(t[i]));
                out(sp.index.at(t), col) += h(i, j) * amp;
            }
        }
    }
    return out;
}

std::pair<FockOperator, FockOperator> segal_field(const FockSpace& sp,
                                                  const Eigen::VectorXcd& f) {
    const double r2 = std::sqrt(2.0);
    FockOperator cr = ladder(sp, f.conjugate(), Ladder::Create);
    FockOperator an = ladder(sp, f, Ladder::Annihilate);
    FockOperator phi = (cr + an) / r2;
    FockOperator pi = std::complex<double>(0, 1) * (cr - an) / r2;
    return {phi, pi};
}

std::complex<double> vacuum_moment(const FockSpace& sp, const Eigen::VectorXd& f,
                                   std::complex<double> z, int terms) {
    if (terms > 2 * sp.cap)
        throw Error(Error::InvalidInput,
                    "vacuum_moment: series order exceeds twice the particle cap");
    auto [phi, pi] = segal_field(sp, f.cast<std::complex<double>>());
    (void)pi;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sp.dim);
    v[sp.vacuum()] = 1.0;
    Eigen::VectorXcd acc = v;
    std::complex<double> coeff = 1.0;
    for (int k = 1; k <= terms; ++k) {
        v = (phi * v).eval();
        coeff *= z / double(k);
        acc += coeff * v;
    }
    return acc[sp.vacuum()];
}

FockOperator wick_power(const FockSpace& sp, const Eigen::VectorXd& f, int n) {
    if (n < 0 || n > sp.cap)
        throw Error(Error::InvalidInput, "wick_power: order outside [0, cap]");
    auto [phi, pi] = segal_field(sp, f.cast<std::complex<double>>());
    (void)pi;
    double nf2 = f.squaredNorm();
    FockOperator out = FockOperator::Zero(sp.dim, sp.dim);
    // :Phi^n: = sum_{k <= n/2} n!/(k!(n-2k)!) Phi^{n-2k} (-|f|^2/4)^k
    std::vector<FockOperator> pows(n + 1);
    pows[0] = FockOperator::Identity(sp.dim, sp.dim);
    for (int i = 1; i <= n; ++i) pows[i] = phi * pows[i - 1];
    auto fact = [](int m) {
        double r = 1;
        for (int i = 2; i <= m; ++i) r *= i;
        return r;
    };
    for (int k = 0; 2 * k <= n; ++k) {
        double c = fact(n) / (fact(k) * fact(n - 2 * k)) * std::pow(-nf2 / 4.0, k);
        out += c * pows[n - 2 * k];
    }
    return out;
}

Eigen::MatrixXcd sector_leq(const FockSpace& sp, int n) {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(sp.dim, sp.dim);
    for (int i = 0; i < sp.dim; ++i)
        if (sp.total(i) <= n) P(i, i) = 1.0;
    return P;
}

}  // namespace polaron
