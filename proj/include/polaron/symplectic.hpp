#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "polaron/fock.hpp"
#include "polaron/numerics.hpp"

namespace polaron {

// block data (S, T) of a Bogoliubov transformation; conjugation is entrywise
// complex conjugation in the standard basis
struct SymplecticPair {
    Eigen::MatrixXcd S, T;
};

// Frobenius residuals of the four group relations:
//   S*S - T*T = 1,  S^T T - T^T S = 0,  SS* - conj(TT*) = 1,  TS* - conj(ST*) = 0
std::array<double, 4> verify_symplectic(const SymplecticPair& p, double tol,
                                        bool* in_sp = nullptr);

struct BogoliubovCoeffs {
    Eigen::MatrixXcd K1, K2, K3;
    double norm_K1;     // spectral norm of K1, must be < 1
    double det_factor;  // det(1 - K1* K1)^{1/4}
};
BogoliubovCoeffs bogoliubov_coeffs(const SymplecticPair& p);

struct BogoliubovData {
    SymplecticPair pair;
    Eigen::VectorXcd L;
    Eigen::VectorXcd xi;  // T L - conj(S) conj(L)
    Eigen::MatrixXcd K;   // T S^{-1}
    static BogoliubovData make(const SymplecticPair& p, const Eigen::VectorXcd& L);
};

// transformed ladder operators b(f) = a*(Tf) + a(Sf), b*(f) = a*(conj(S)f) + a(conj(T)f)
FockOperator b_ladder(const FockSpace& sp, const SymplecticPair& p,
                      const Eigen::VectorXcd& f, Ladder kind);

// quadratic exponents: Delta_K = sum_ij K_ij a*_i a*_j and its annihilation twin
FockOperator delta_quadratic(const FockSpace& sp, const Eigen::MatrixXcd& K,
                             Ladder kind);

// multiplicative second quantization Gamma(B)
FockOperator mult_second_quantization(const FockSpace& sp, const Eigen::MatrixXcd& B);

// unitary intertwiner U with U b(f) = a(f) U realized on the truncated space
FockOperator intertwiner(const FockSpace& sp, const SymplecticPair& p);

// max over low-particle probes of ||(U a*(f) - b*(f) U) psi|| below the top layer
// (the cap layer is where truncated creations land and is excluded)
double intertwine_check(const FockSpace& sp, const SymplecticPair& p,
                        const Eigen::VectorXcd& f, int probe_cap = 4);

// exp(b(L) - b*(conj L))
FockOperator displacement(const FockSpace& sp, const SymplecticPair& p,
                          const Eigen::VectorXcd& L);

struct OverlapResult {
    std::complex<double> r1, r2;          // matrix-side values
    std::complex<double> closed1, closed2;  // closed forms
    double res1, res2;
};
OverlapResult vacuum_overlaps(const FockSpace& sp, const BogoliubovData& data,
                              const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

// one-parameter subgroup generated by [[Sg, conj(Tg)], [Tg, conj(Sg)]];
// requires Sg anti-hermitian and Tg symmetric
SymplecticPair sp_flow(const Eigen::MatrixXcd& Sg, const Eigen::MatrixXcd& Tg,
                       double t);

struct LocalExponent {
    std::vector<double> tau;  // samples on the uniform grid over [0, t]
    double theta_t;
};
// tau_r = (1/2) Im tr(Tg^H T_r S_r^{-1}); theta by Richardson-refined trapezoid
LocalExponent local_exponent(const Eigen::MatrixXcd& Sg, const Eigen::MatrixXcd& Tg,
                             double t, int grid);
// rho(t,s) = theta(t) + theta(s) - theta(t+s)
double local_exponent_rho(const Eigen::MatrixXcd& Sg, const Eigen::MatrixXcd& Tg,
                          double t, double s, int grid);

// partial sums of Prop-style determinant identity:
// sum_{n<=N} z^n ||Delta_K^n vac||^2 / (2^n n!)^2 vs det(1 - z K*K)^{-1/2}
struct DetIdentity {
    std::vector<double> partial_sums;
    double target;
};
DetIdentity det_identity(const FockSpace& sp, const Eigen::MatrixXcd& K, double z);

double spectral_norm(const Eigen::MatrixXcd& A);

}  // namespace polaron
