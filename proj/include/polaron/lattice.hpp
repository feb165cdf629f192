#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "polaron/gse.hpp"

namespace polaron {

struct LatticeConfig {
    double a = 4;       // box scale; momentum spacing 2 pi / a
    double L = 1;       // momentum radius in max-norm units of 2 pi
    double eps_ph = 0.5;  // photon mass shift omega_eps = |l| + eps_ph
    int d = 3;
    int cap = 1500;  // largest tolerated matrix dimension D
};

// finite harmonic-oscillator data; indices run over (lattice point, polarization)
// with the cell measure (2 pi / a)^3 folded into v so lattice sums approximate
// momentum integrals
struct LatticeMatrices {
    Eigen::MatrixXd A0;  // diagonal, omega_eps(l)^2
    std::array<Eigen::VectorXd, 3> v;
    Eigen::MatrixXd P;  // sum_mu v_mu v_mu^T
    Eigen::MatrixXd A;  // A0 + (alpha^2/m) P
    Eigen::VectorXd f;  // (alpha/m) A^{-1} sum_mu p_mu v_mu
    std::vector<std::array<double, 3>> points;  // kept momenta l
    std::vector<double> h3phi2;                 // (2pi/a)^3 phi(|l|)^2 per point
    std::vector<double> omega_eps;              // |l| + eps_ph per point
    double theta;  // (2/3) sum_l h^3 phi^2 / omega_eps^2
    int D;
};

LatticeMatrices build(const CutoffProfile& cut, const ModelParams& prm,
                      const LatticeConfig& cfg);

// ground energy p^2/2m - (1/2)(f, A f) + (1/2) tr(sqrt A - sqrt A0) by
// eigendecomposition
double energy_eigen(const LatticeMatrices& M, const ModelParams& prm);

// same energy through the rank-3 resolvent identities:
//   p^2/(2(m + alpha^2 theta)) + (2/pi) int_0^inf alpha^2 s^2 S2(s)/(m + alpha^2 zeta(s)) ds
double energy_closed(const LatticeMatrices& M, const ModelParams& prm,
                     const Quadrature& q = Quadrature{});

struct Convergence {
    std::vector<double> energies;
    double target;  // p^2/(2 m_eff) + g from the continuum formulas
    std::vector<double> gaps;
};
Convergence converge_to_Ep(const CutoffProfile& cut, const ModelParams& prm,
                           const std::vector<LatticeConfig>& schedule,
                           const Quadrature& q = Quadrature{});

// Richardson step in eps_ph (ratio 1/2) at each (a, L), then Aitken acceleration
// across the a-refinements; closed-form energies only
double extrapolate_to_Ep(const CutoffProfile& cut, const ModelParams& prm,
                         const std::vector<double>& a_list,
                         const std::vector<double>& L_list,
                         const std::vector<double>& eps_list,
                         const Quadrature& q = Quadrature{});

}  // namespace polaron
