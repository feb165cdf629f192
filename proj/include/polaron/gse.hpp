#pragma once

#include <array>
#include <functional>
#include <vector>

#include "polaron/dispersion.hpp"
#include "polaron/numerics.hpp"

namespace polaron {

struct ModelParams {
    double m = 1.0;
    double alpha = 1.0;
    int d = 3;
    std::array<double, 3> p{0, 0, 0};
    double eps_self = 1.0;  // self-energy interpolation in [0, 1]
    double eps_ph = 0.0;    // artificial photon mass (used by the lattice module)
};

// m + eps_self * alpha^2 ((d-1)/d) ||phi/omega||^2
double effective_mass(const CutoffProfile& cut, const ModelParams& prm,
                      const Quadrature& q = Quadrature{});

// field-induced ground energy
//   g = (d/2pi) int_R [e a^2 c ||t phi/(t^2+w^2)||^2] / [m + e a^2 c ||phi/sqrt(t^2+w^2)||^2] dt
// with c = (d-1)/d and e = eps_self
double ground_energy(const CutoffProfile& cut, const ModelParams& prm,
                     const Quadrature& q = Quadrature{});

// closed-form sharp-band ground energy at d=3, alpha=1 (single radial integral)
double ground_energy_sharp(double lambda, double Lambda, double m,
                           const Quadrature& q = Quadrature{});

struct Asymptotics {
    std::vector<double> ratios;  // g(Lambda)/Lambda^{3/2} along the grid
    double lower, upper;         // constants bracketing the limit
    bool within_band;            // largest-Lambda sample inside the slacked band
};
Asymptotics g_asymptotics(double lambda, double m,
                          const std::vector<double>& Lambda_grid,
                          double slack = 0.05, const Quadrature& q = Quadrature{});

enum class MultiCase { SharedCutoff, DisjointCutoffs };
// many-particle ground energy (d=3, unit couplings); shared: one profile for all
// N particles; disjoint: N profiles with pairwise disjoint supports
double ground_energy_multi(int N, MultiCase mode,
                           const std::vector<CutoffProfile>& cuts, double m,
                           const Quadrature& q = Quadrature{});

struct EpsilonFamily {
    double m_eff_eps;   // m + eps a^2 c W
    double m_eps_inv;   // 1/m_eps (sign classifies bounded-below vs not)
    double g_eps;
    double alpha_star;  // critical coupling; +inf at eps_self = 1
};
EpsilonFamily epsilon_family(const CutoffProfile& cut, const ModelParams& prm,
                             const Quadrature& q = Quadrature{});

struct IrCriterion {
    bool regular;
    double value;  // int phi^2/omega^3 dk when regular
};
IrCriterion ir_criterion(const CutoffProfile& cut, const Quadrature& q = Quadrature{});

// strong-coupling smearing variance C = (1/2)((d-1)/d) int |Q_e(k)|^2/omega^3 dk
// with Q_e = alpha phi / D_plus^eps(omega^2)
double scl_constant(const CutoffProfile& cut, const ModelParams& prm,
                    const Quadrature& q = Quadrature{});
// radial Gaussian convolution (V * P_C)(x), P_C the centered Gaussian of
// covariance C (d=3)
double gaussian_smear(const std::function<double(double)>& V, double C, double x,
                      double r_max, const Quadrature& q = Quadrature{});

// ground energy after omega -> kappa^2 omega, phi -> kappa^2 phi (equals kappa^2 g)
double wcl_renorm(const CutoffProfile& cut, const ModelParams& prm, double kappa,
                  const Quadrature& q = Quadrature{});

struct EnergyBreakdown {
    double m_eff, g, E_p;
    bool ir_regular;
    double ir_integral;  // meaningful when ir_regular
};
EnergyBreakdown energy_breakdown(const CutoffProfile& cut, const ModelParams& prm,
                                 const Quadrature& q = Quadrature{});

}  // namespace polaron
